"""Real zeros of theta(q, .): bracketing, refinement, labelling, interlacing checks.

Labels follow the usual convention for negative q: positive zeros are
0 < x_1 < x_3 < ... and negative zeros are ... < x_4 < x_2 < 0, so that for
small |q| the zero x_j sits close to -q^(-j). When real zeros have coalesced
and left the real axis the survivors are re-ranked by modulus within each sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from .core import DerivOrder, Parameter, _as_param, default_digits, evaluate, to_mpf
from .errors import InsufficientZeros, LabelConflict, NewtonStall, ScanIncomplete
from .report import CONJECTURE_PASS, CONJECTURE_VIOLATION, FAIL, PASS, CheckReport, Witness, fmt

SIMPLE = "simple"
DOUBLE = "double"
DEFAULT_J_MAX = 12
POINTS_PER_SEGMENT = 32
MAX_POINTS_PER_SEGMENT = 4096
DOUBLE_FLAG_FACTOR = 100


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    kind: str = SIMPLE
    center: mpmath.mpf | None = None


@dataclass
class RealZero:
    x: mpmath.mpf
    multiplicity: str
    residual: mpmath.mpf
    bracket: tuple
    index_label: int = 0
    error_bound: mpmath.mpf = mpmath.mpf(0)
    uncertainty: mpmath.mpf = mpmath.mpf(0)

    @property
    def sign(self) -> int:
        return 1 if self.x > 0 else -1


@dataclass
class RealZeroSeq:
    q: Parameter
    zeros: list[RealZero]
    scan_radius: float
    digits: int = field(default=64)

    def by_label(self) -> dict[int, RealZero]:
        return {z.index_label: z for z in self.zeros}

    def x(self, label: int):
        return self.by_label()[label].x

    @property
    def positive(self) -> list[RealZero]:
        return [z for z in self.zeros if z.x > 0]

    @property
    def negative(self) -> list[RealZero]:
        return [z for z in self.zeros if z.x < 0]

    def count_inside(self, radius) -> int:
        """Real zeros with |x| < radius, counted with multiplicity."""
        return sum(2 if z.multiplicity == DOUBLE else 1 for z in self.zeros if abs(z.x) < radius)


def scan_radius(q, j_max: int) -> float:
    return abs(float(q)) ** (-(j_max + 0.5))


def j_max_for_radius(q, radius: float) -> int:
    """Smallest j_max whose scan radius |q|^-(j_max+1/2) reaches ``radius``."""
    lq = -math.log(abs(float(q)))
    return max(1, math.ceil(math.log(radius) / lq - 0.5))


MIN_SEGMENT_RATIO = 1.1


def _segment_edges(qa: float, j_max: int) -> list[float]:
    # near |q| = 1 consecutive powers crowd together; merge them into segments spanning >= 10%
    edges = [0.5]
    last = qa ** (-(j_max + 0.5))
    for j in range(0, j_max + 1):
        e = qa ** (-(j + 0.5))
        if e >= edges[-1] * MIN_SEGMENT_RATIO or (j == j_max and e > edges[-1]):
            edges.append(e)
    if edges[-1] < last:
        edges.append(last)
    return edges


def _geom(a: float, b: float, n: int) -> list[float]:
    r = (b / a) ** (1.0 / n)
    return [a * r ** i for i in range(n)]


def _sgn(res) -> int:
    if abs(res.value) <= res.error_bound:
        return 0
    return 1 if res.value > 0 else -1


def _newton_bisect(fun, dfun, lo, hi, flo, digits: int, max_iter: int = 400):
    """Root of ``fun`` in [lo, hi] where fun changes sign; bisection to relative width 1e-3, then
    safeguarded Newton; falls back to bisection whenever Newton leaves the bracket."""
    with mp.workdps(digits + 10):
        lo, hi = mpmath.mpf(lo), mpmath.mpf(hi)
        slo = 1 if flo > 0 else -1
        tol = mpmath.mpf(10) ** (-(digits + 2))
        while hi - lo > mpmath.mpf("1e-3") * abs((lo + hi) / 2):
            mid = (lo + hi) / 2
            fm = fun(mid)
            if fm.value == 0:
                return mid, fm, False
            if (fm.value > 0) == (slo > 0):
                lo = mid
            else:
                hi = mid
        x = (lo + hi) / 2
        stalled = False
        for _ in range(max_iter):
            f = fun(x)
            if abs(f.value) <= f.error_bound:
                return x, f, stalled
            d = dfun(x)
            if (f.value > 0) == (slo > 0):
                lo = x
            else:
                hi = x
            step = f.value / d.value if d.value != 0 else None
            xn = x - step if step is not None else None
            if xn is None or not (lo < xn < hi):
                stalled = True
                xn = (lo + hi) / 2
            if abs(xn - x) <= tol * abs(x) or hi - lo <= tol * abs(x):
                x = xn
                return x, fun(x), stalled
            x = xn
        raise NewtonStall(f"no convergence in [{mpmath.nstr(lo, 10)}, {mpmath.nstr(hi, 10)}]")


def _theta_fn(p, digits, dx=0):
    order = DerivOrder(dx, 0)
    return lambda x: evaluate(p, x, order, digits=digits)


def _critical_point(p, a, b, digits):
    """A zero of theta_x between a and b (a < b), or None when theta_x keeps its sign."""
    f1 = _theta_fn(p, digits, 1)
    f2 = _theta_fn(p, digits, 2)
    pts = [a + (b - a) * i / 8 for i in range(9)]
    vals = [f1(t) for t in pts]
    for (t0, v0), (t1, v1) in zip(zip(pts, vals), zip(pts[1:], vals[1:])):
        if v0.value == 0:
            return to_mpf(t0)
        if (v0.value > 0) != (v1.value > 0):
            c, _, _ = _newton_bisect(f1, f2, t0, t1, v0.value, digits)
            return c
    return None


def _scan_side(p, side: int, edges, n0: int, digits: int):
    f = _theta_fn(p, digits)
    brackets = []
    pts, res = [], []
    for a, b in zip(edges, edges[1:]):
        n = n0
        while True:
            seg = [side * t for t in _geom(a, b, n)]
            seg_res = [f(t) for t in seg]
            signs = [_sgn(r) for r in seg_res]
            if not any(s0 == 0 and s1 == 0 for s0, s1 in zip(signs, signs[1:])):
                break
            if n >= MAX_POINTS_PER_SEGMENT:
                raise ScanIncomplete(
                    f"theta indistinguishable from 0 at adjacent points near x={seg[signs.index(0)]:.6g}"
                )
            n *= 2
        pts.extend(seg)
        res.extend(seg_res)
    pts.append(side * edges[-1])
    res.append(f(pts[-1]))
    signs = [_sgn(r) for r in res]
    mags = [abs(r.value) for r in res]

    i = 0
    while i < len(pts) - 1:
        s0, s1 = signs[i], signs[i + 1]
        if s0 and s1 and s0 != s1:
            brackets.append(Bracket(min(pts[i], pts[i + 1]), max(pts[i], pts[i + 1])))
        elif s1 == 0 and i + 2 < len(pts) and signs[i + 2] and s0 and s0 != signs[i + 2]:
            brackets.append(Bracket(min(pts[i], pts[i + 2]), max(pts[i], pts[i + 2])))
            i += 1
        i += 1

    # same-sign valleys of |theta| may hide a close pair of zeros or a double zero
    for i in range(1, len(pts) - 1):
        if not (signs[i - 1] == signs[i + 1] != 0 and signs[i] in (0, signs[i - 1])):
            continue
        if not (mags[i] <= mags[i - 1] and mags[i] <= mags[i + 1]):
            continue
        a, b = sorted((pts[i - 1], pts[i + 1]))
        c = _critical_point(p, a, b, digits)
        if c is None:
            continue
        rc = f(c)
        if abs(rc.value) <= DOUBLE_FLAG_FACTOR * rc.error_bound:
            brackets.append(Bracket(a, b, DOUBLE, c))
        elif (rc.value > 0) != (signs[i] > 0):
            cf = float(c)
            brackets.append(Bracket(a, cf))
            brackets.append(Bracket(cf, b))
    return brackets


def bracket_zeros(p, j_max: int = DEFAULT_J_MAX, digits: int | None = None,
                  points_per_segment: int = POINTS_PER_SEGMENT, radius: float | None = None):
    """Disjoint brackets covering the real zeros with |x| <= |q|^-(j_max+1/2).

    There are no zeros with |x| <= 1/2, so the scan starts there. For q > 0 the
    positive half-axis carries no zeros and is skipped.
    """
    p = _as_param(p)
    if p.q == 0:
        return []
    digits = digits or default_digits()
    qa = abs(float(p.q))
    if radius is not None:
        j_max = j_max_for_radius(qa, radius)
    edges = _segment_edges(qa, j_max)
    out = []
    sides = (-1, 1) if p.q < 0 else (-1,)
    for side in sides:
        out.extend(_scan_side(p, side, edges, points_per_segment, digits))
    out.sort(key=lambda b: b.lo)
    return out


def refine_zero(p, bracket: Bracket, digits: int | None = None) -> RealZero:
    """Refine a bracket into a :class:`RealZero` (label assigned later)."""
    p = _as_param(p)
    digits = digits or default_digits()
    f = _theta_fn(p, digits)
    if bracket.kind == DOUBLE:
        c = bracket.center
        rc = f(c)
        r2 = evaluate(p, c, DerivOrder(2, 0), digits=digits)
        with mp.workdps(digits + 10):
            # |theta| <= |theta_xx| u^2 / 2 pins a double zero only to a square root
            unc = mpmath.sqrt(2 * (abs(rc.value) + rc.error_bound) / abs(r2.value)) if r2.value else mpmath.inf
        return RealZero(c, DOUBLE, abs(rc.value), (bracket.lo, bracket.hi), 0, rc.error_bound, unc)
    flo = f(bracket.lo)
    try:
        x, fx, _ = _newton_bisect(f, _theta_fn(p, digits, 1), bracket.lo, bracket.hi, flo.value, digits)
    except NewtonStall:
        x, fx = _bisect_only(f, bracket, flo.value, digits)
    d = evaluate(p, x, DerivOrder(1, 0), digits=digits)
    with mp.workdps(digits + 10):
        slope = abs(d.value) - d.error_bound
        unc = (abs(fx.value) + fx.error_bound) / slope if slope > 0 else abs(mpmath.mpf(bracket.hi) - bracket.lo)
        unc += abs(x) * mpmath.mpf(10) ** (-(digits + 8))
    return RealZero(x, SIMPLE, abs(fx.value), (bracket.lo, bracket.hi), 0, fx.error_bound, unc)


def _bisect_only(f, bracket, flo, digits):
    with mp.workdps(digits + 10):
        lo, hi = mpmath.mpf(bracket.lo), mpmath.mpf(bracket.hi)
        tol = mpmath.mpf(10) ** (-digits)
        while hi - lo > tol * abs(hi):
            mid = (lo + hi) / 2
            fm = f(mid)
            if (fm.value > 0) == (flo > 0):
                lo = mid
            else:
                hi = mid
        x = (lo + hi) / 2
        return x, f(x)


def order_and_label(zeros, p, radius: float = math.inf, digits: int | None = None) -> RealZeroSeq:
    """Sort zeros and assign odd labels to positive and even labels to negative ones."""
    p = _as_param(p)
    digits = digits or default_digits()
    pos = sorted((z for z in zeros if z.x > 0), key=lambda z: z.x)
    neg = sorted((z for z in zeros if z.x < 0), key=lambda z: -z.x)
    sep = mpmath.mpf(10) ** (-(digits - 5))
    for group in (pos, neg):
        for a, b in zip(group, group[1:]):
            if abs(b.x - a.x) <= sep * abs(b.x):
                raise LabelConflict(f"zeros {mpmath.nstr(a.x, 15)} and {mpmath.nstr(b.x, 15)} coincide")
    for i, z in enumerate(pos):
        z.index_label = 2 * i + 1
    for i, z in enumerate(neg):
        z.index_label = 2 * i + 2
    ordered = sorted(pos + neg, key=lambda z: z.index_label)
    return RealZeroSeq(p, ordered, radius, digits)


def real_zeros(p, j_max: int = DEFAULT_J_MAX, digits: int | None = None,
               radius: float | None = None,
               points_per_segment: int = POINTS_PER_SEGMENT) -> RealZeroSeq:
    """Bracket, refine and label all real zeros inside the scan radius."""
    p = _as_param(p)
    digits = digits or default_digits()
    if radius is not None and p.q != 0:
        j_max = j_max_for_radius(p.q, radius)
    brackets = bracket_zeros(p, j_max, digits, points_per_segment)
    zeros = [refine_zero(p, b, digits) for b in brackets]
    r = scan_radius(p.q, j_max) if p.q != 0 else math.inf
    return order_and_label(zeros, p, r, digits)


def zero_estimates(seq: RealZeroSeq) -> list[tuple[int, mpmath.mpf, mpmath.mpf]]:
    """(j, -q^-j, x_j / (-q^-j)) for each labelled zero."""
    out = []
    with mp.workdps(seq.digits + 10):
        q = seq.q.q
        for z in seq.zeros:
            center = -q ** (-z.index_label)
            out.append((z.index_label, center, z.x / center))
    return out


# Each chain is (name, [(multiplier exponent of q, label offset)]). A term (e, a) means x_{4k+a} / q^e.
CHAINS = {
    "fe-qx2": [(0, 1), (-1, 2), (0, 3)],
    "prec-a": [(-1, 5), (0, 4), (0, 2), (-1, 3)],
    "prec-b": [(0, 1), (-1, 2), (-1, 4), (0, 3)],
    "prec-c": [(-1, 4), (0, 3), (0, 5), (-1, 6)],
    "prec-d": [(0, 6), (-1, 7), (-1, 5), (0, 4)],
    "fourfold-x2": [(0, 8), (4, 2), (0, 6)],
    "neg-q2": [(0, 6), (2, 4), (2, 2), (0, 4)],
    "pos-q2": [(0, 5), (2, 3), (2, 5), (0, 7)],
}
# holds only once x_{4k+3} >= 3 (k large)
LATE_CHAINS = {"late-q3": [(0, 8), (3, 5), (3, 3), (0, 6)]}


def _chain_witnesses(seq, chains, digits, require=None):
    table = seq.by_label()
    top = max(table, default=0)
    out = []
    with mp.workdps(digits + 10):
        q = seq.q.q
        for k in range(top // 4 + 1):
            for name, terms in chains.items():
                if not all(4 * k + a in table for _, a in terms):
                    continue
                if require is not None and not require(table, k):
                    continue
                vals = [table[4 * k + a].x / q ** e for e, a in terms]
                unc = [table[4 * k + a].uncertainty / abs(q) ** e for e, a in terms]
                # tightest consecutive pair: its gap and the combined uncertainty of its ends
                margin, bound = min(((b - a, ua + ub) for a, b, ua, ub in zip(vals, vals[1:], unc, unc[1:])),
                                    key=lambda t: t[0] - t[1])
                desc = " < ".join(_term_name(e, 4 * k + a) for e, a in terms)
                out.append(Witness(f"{name} k={k}: {desc}", fmt(margin, 12), fmt(bound, 6), margin > bound))
    return out


def _term_name(e, label):
    if e == 0:
        return f"x{label}"
    if e == -1:
        return f"q*x{label}"
    return f"x{label}/q^{e}"


def interlacing_report(seq: RealZeroSeq, proven: bool | None = None, late: bool = False) -> CheckReport:
    """Instantiate every zero-ordering chain available from the labelled zeros.

    By default the chains valid whenever the zeros involved are real and
    distinct are checked; ``late=True`` checks instead the x/q^3 chain, which
    only applies once x_{4k+3} >= 3 and is always reported as conjectural.
    Below |q| = 0.108 all zeros are real, so failures there are hard failures.
    """
    if len(seq.zeros) < 8:
        raise InsufficientZeros(f"need at least 8 labelled real zeros, have {len(seq.zeros)}")
    if late:
        wit = _chain_witnesses(seq, LATE_CHAINS, seq.digits,
                               require=lambda t, k: t[4 * k + 3].x >= 3)
        proven = False
        cite = "x_{4k+8} < x_{4k+5}/q^3 < x_{4k+3}/q^3 < x_{4k+6} once x_{4k+3} >= 3"
    else:
        wit = _chain_witnesses(seq, CHAINS, seq.digits)
        cite = "x_{4k+1} < q x_{4k+2} < x_{4k+3} and related orderings of x_j, q x_j, x_j/q^2, x_j/q^4"
    if proven is None:
        proven = abs(seq.q.q) <= mpmath.mpf("0.108")
    ok = all(w.ok for w in wit)
    if not wit:
        status = "skipped"
    elif proven:
        status = PASS if ok else FAIL
    else:
        status = CONJECTURE_PASS if ok else CONJECTURE_VIOLATION
    notes = f"q={fmt(seq.q.q, 12)}; {len(wit)} chains instantiated"
    return CheckReport("interlacing-late" if late else "interlacing", status, wit, notes, [cite])
