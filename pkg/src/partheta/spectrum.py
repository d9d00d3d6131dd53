"""Double real zeros of theta(q, .) and the spectral sequences they define.

A spectral point is a solution (q*, y*) of theta = theta_x = 0. On the branch
q < 0 the double zeros alternate between local minima at y* < 0 and local
maxima at y* > 0; on the branch q > 0 they are all negative local minima.

The continuation works side by side: negative-x minima and positive-x maxima
are followed as two separate subsequences and merged by |q|, so the
alternation is an output that gets checked, not an assumption.
"""
from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from .core import DerivOrder, Parameter, _as_param, default_digits, evaluate, to_mpf
from .errors import (ContinuationBreak, Diverged, NewtonStall, SingularJacobian, ThetaError,
                     TooFewEntries)
from .report import (CONJECTURE_PASS, CONJECTURE_VIOLATION, FAIL, PASS, CheckReport, Witness,
                     fmt)
from .zeros import DOUBLE, RealZero, RealZeroSeq, _newton_bisect, real_zeros

NEGATIVE_Q = "negative_q"
POSITIVE_Q = "positive_q"
LOCAL_MIN = "local_min"
LOCAL_MAX = "local_max"

# starting guesses for the first double zero of each side
SEEDS = {
    NEGATIVE_Q: {-1: ("-0.727", "-2.99"), 1: ("-0.784", "2.91")},
    POSITIVE_Q: {-1: ("0.31", "-7")},
}
CERT_FACTOR = 10
MAX_DIGITS = 512
CENSUS_RADIUS = 3 * math.exp(math.pi / 2)


@dataclass
class SpectralPoint:
    k: int
    q_star: mpmath.mpf
    y_star: mpmath.mpf
    branch: str
    kind: str
    residual_theta: mpmath.mpf
    residual_dx: mpmath.mpf
    digits_certified: int
    theta_xx: mpmath.mpf = mpmath.mpf(0)
    bound_theta: mpmath.mpf = mpmath.mpf(0)
    bound_dx: mpmath.mpf = mpmath.mpf(0)
    rest_simple: bool | None = None
    notes: str = ""

    @property
    def certified(self) -> bool:
        return (self.residual_theta <= CERT_FACTOR * self.bound_theta
                and self.residual_dx <= CERT_FACTOR * self.bound_dx)


@dataclass
class AsymptoticFit:
    slope_estimate: float
    y_limit_estimate: float
    k_range_used: tuple[int, int]
    scaled_gaps: list[float] = field(default_factory=list)
    target_slope: float = math.pi / 8
    target_y_limit: float = math.exp(math.pi / 2)


@dataclass
class SpectrumTable:
    branch: str
    entries: list[SpectralPoint]
    fit: AsymptoticFit | None = None
    notes: str = ""


def _system(q, y, digits):
    ev = lambda dx, dq: evaluate(q, y, DerivOrder(dx, dq), digits=digits)
    return ev(0, 0), ev(1, 0), ev(0, 1), ev(2, 0), ev(1, 1)


def _newton(q, y, digits, max_iter=60, damped=True):
    """Damped Newton on F = (theta, theta_x). Returns (q, y, converged, last_step, cond)."""
    with mp.workdps(digits + 20):
        q, y = mpmath.mpf(q), mpmath.mpf(y)
        t, tx, tq, txx, txq = _system(q, y, digits)
        step = (mpmath.inf, mpmath.inf)
        cond = mpmath.mpf(1)
        for _ in range(max_iter):
            if abs(t.value) <= CERT_FACTOR * t.error_bound and abs(tx.value) <= CERT_FACTOR * tx.error_bound:
                return q, y, True, step, cond
            jac = mpmath.matrix([[tq.value, tx.value], [txq.value, txx.value]])
            det = jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0]
            if det == 0:
                raise SingularJacobian(f"singular Jacobian at q={mpmath.nstr(q, 15)}")
            cond = mpmath.mnorm(jac, 1) * mpmath.mnorm(jac ** -1, 1)
            if cond > mpmath.mpf(10) ** (digits / 2):
                return q, y, False, step, cond
            dq = -(jac[1, 1] * t.value - jac[0, 1] * tx.value) / det
            dy = -(-jac[1, 0] * t.value + jac[0, 0] * tx.value) / det
            norm0 = abs(t.value) + abs(tx.value)
            lam = mpmath.mpf(1)
            for _ in range(20):
                qn, yn = q + lam * dq, y + lam * dy
                if -1 < qn < 1 and qn != 0:
                    nt = _system(qn, yn, digits)
                    if not damped or abs(nt[0].value) + abs(nt[1].value) < norm0:
                        break
                lam /= 2
            else:
                return q, y, False, step, cond
            q, y = qn, yn
            t, tx, tq, txx, txq = nt
            step = (abs(lam * dq), abs(lam * dy))
        return q, y, False, step, cond


def double_refine(p0, y0, digits: int | None = None, k: int = 0, max_digits: int = MAX_DIGITS,
                  verify_rest: bool = False, radius: float | None = None) -> SpectralPoint:
    """Solve theta = theta_x = 0 from (q0, y0) and certify the result at twice the precision."""
    p0 = _as_param(p0)
    if p0.q == 0:
        raise Diverged("q0 must be nonzero")
    digits = digits or default_digits()
    q, y = p0.q, to_mpf(y0)
    d = digits
    while True:
        q, y, ok, step, cond = _newton(q, y, d)
        if ok:
            break
        if not (-1 < q < 1) or d * 2 > max_digits:
            raise Diverged(f"Newton failed from ({mpmath.nstr(p0.q, 10)}, {mpmath.nstr(to_mpf(y0), 10)})"
                           f" at {d} digits (cond ~ {mpmath.nstr(cond, 3)})")
        d *= 2

    q_lo, y_lo = q, y
    d2 = 2 * d
    with mp.workdps(d2 + 20):
        # undamped polish at double precision, then certify there
        for _ in range(8):
            q, y, ok, _, _ = _newton(q, y, d2, max_iter=1, damped=False)
            t, tx, tq, txx, txq = _system(q, y, d2)
            if abs(t.value) <= CERT_FACTOR * t.error_bound and abs(tx.value) <= CERT_FACTOR * tx.error_bound:
                break
        else:
            raise Diverged("certification at doubled precision failed")
        if abs(txx.value) <= 100 * txx.error_bound or abs(tq.value) <= 100 * tq.error_bound:
            raise SingularJacobian(
                f"theta_xx={mpmath.nstr(txx.value, 5)}, theta_q={mpmath.nstr(tq.value, 5)}: "
                "zero of multiplicity > 2 suspected")
        diff = max(abs(q - q_lo) / abs(q), abs(y - y_lo) / abs(y))
        certified = digits if diff == 0 else min(digits, int(-mpmath.log10(diff)))
        branch = NEGATIVE_Q if q < 0 else POSITIVE_Q
        kind = LOCAL_MIN if txx.value > 0 else LOCAL_MAX
        sp = SpectralPoint(k, q, y, branch, kind, abs(t.value), abs(tx.value), certified,
                           txx.value, t.error_bound, tx.error_bound)
    if verify_rest:
        sp.rest_simple, sp.notes = _rest_simple(sp, digits, radius)
    return sp


def _rest_simple(sp: SpectralPoint, digits: int, radius: float | None):
    """All other real zeros inside the radius are simple and the census is consistent."""
    from .census import count_total

    r = radius or max(CENSUS_RADIUS, 2 * abs(float(sp.y_star)))
    seq = real_zeros(Parameter(sp.q_star), digits=digits, radius=r)
    doubles = [z for z in seq.zeros if z.multiplicity == DOUBLE]
    near = [z for z in doubles if abs(z.x - sp.y_star) <= max(z.uncertainty, mpmath.mpf(10) ** (-digits // 2))]
    try:
        total = count_total(Parameter(sp.q_star), seq.scan_radius, digits=digits)
    except ThetaError as exc:
        return None, f"census unavailable: {exc}"
    real = seq.count_inside(seq.scan_radius)
    ok = len(doubles) == 1 and len(near) == 1 and total >= real and (total - real) % 2 == 0
    return ok, (f"{len(seq.zeros) - len(doubles)} simple real zeros, {len(doubles)} double, "
                f"{(total - real) // 2} complex pairs within |x|<{seq.scan_radius:.4g}")


def complex_pairs_at(q, digits: int = 30, radius: float = CENSUS_RADIUS) -> int:
    from .census import census

    return census(Parameter(q), digits=digits, radius=radius).complex_pairs


# --- continuation -----------------------------------------------------------------


def _critical_points(q, side: int, radius: float, digits: int, n: int = 600):
    """Critical points of theta(q, .) on one half-axis within |x| <= radius."""
    p = Parameter(q)
    f1 = lambda x: evaluate(p, x, DerivOrder(1, 0), digits=digits)
    f2 = lambda x: evaluate(p, x, DerivOrder(2, 0), digits=digits)
    grid = [side * 0.5 * (2 * radius) ** (i / n) for i in range(n + 1)]
    vals = [f1(t) for t in grid]
    out = []
    for (a, va), (b, vb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if (va.value > 0) != (vb.value > 0):
            lo, hi, flo = (a, b, va.value) if a < b else (b, a, vb.value)
            c, _, _ = _newton_bisect(f1, f2, lo, hi, flo, digits)
            out.append(c)
    return out


def _valley_candidates(q, side: int, radius: float, digits: int):
    """Critical points whose value has the sign that lets them touch zero next."""
    p = Parameter(q)
    cands = []
    first_zero_passed = side < 0
    for c in sorted(_critical_points(q, side, radius, digits), key=abs):
        v = evaluate(p, c, digits=digits).value
        vxx = evaluate(p, c, DerivOrder(2, 0), digits=digits).value
        if v < 0:
            first_zero_passed = True
        if side < 0 and vxx > 0 and v < 0:
            cands.append(c)
        elif side > 0 and vxx < 0 and v > 0 and first_zero_passed:
            cands.append(c)
    return cands


def _track(q, c, digits):
    """Follow the critical point near c to parameter q; returns (c, value, theta_xx)."""
    p = Parameter(q)
    with mp.workdps(digits + 10):
        x = mpmath.mpf(c)
        for _ in range(40):
            d1 = evaluate(p, x, DerivOrder(1, 0), digits=digits).value
            d2 = evaluate(p, x, DerivOrder(2, 0), digits=digits).value
            if d2 == 0:
                raise NewtonStall("flat critical point")
            dx = d1 / d2
            x -= dx
            if abs(dx) <= abs(x) * mpmath.mpf(10) ** (-(digits - 5)):
                break
        else:
            raise NewtonStall("critical point lost")
        return x, evaluate(p, x, digits=digits).value, d2


def valley_track(side: int, q_start, direction: int, digits: int = 30,
                 radius: float = CENSUS_RADIUS, max_steps: int = 400):
    """March q from ``q_start`` in ``direction`` until a tracked valley touches zero.

    Returns an initial guess (q, y) for :func:`double_refine`.
    """
    with mp.workdps(digits + 10):
        q = to_mpf(q_start)
        cands = [(c,) + _track(q, c, digits)[1:] for c in _valley_candidates(q, side, radius, digits)]
        if not cands:
            raise ContinuationBreak(f"no valley on side {side} at q={mpmath.nstr(q, 10)}")
        h = (1 - abs(q)) / 40
        for _ in range(max_steps):
            qn = q + direction * h
            nxt, hit = [], None
            for c, val, _ in cands:
                try:
                    cn, vn, d2 = _track(qn, c, digits)
                except NewtonStall:
                    continue
                if (d2 > 0) != (side < 0):
                    continue
                nxt.append((cn, vn, d2))
                if (vn > 0) != (val > 0) and hit is None:
                    # secant on the critical value for the crossing parameter
                    hit = (q + (qn - q) * val / (val - vn), cn)
            if hit is not None:
                return hit
            if not nxt:
                raise ContinuationBreak("all tracked valleys lost")
            q, cands = qn, nxt
            h = min(h, (1 - abs(q)) / 40)
        raise ContinuationBreak("valley tracking exhausted its step budget")


def _predict(prev):
    """Secant in 1/i on |q| and log|y| from the last two points of one side."""
    (i1, a), (i2, b) = prev[-2], prev[-1]
    i = i2 + 1
    s = (1 / i - 1 / i2) / (1 / i2 - 1 / i1)
    with mp.workdps(40):
        qa = abs(b.q_star) + (abs(b.q_star) - abs(a.q_star)) * s
        ly = mpmath.log(abs(b.y_star)) + (mpmath.log(abs(b.y_star)) - mpmath.log(abs(a.y_star))) * s
        return mpmath.sign(b.q_star) * qa, mpmath.sign(b.y_star) * mpmath.exp(ly)


def _side_ok(sp, side, prev):
    if sp.y_star * side <= 0:
        return False
    if (sp.kind == LOCAL_MIN) != (side < 0):
        return False
    if prev and abs(sp.q_star) <= abs(prev[-1][1].q_star) * (1 + mpmath.mpf(10) ** -12):
        return False
    return True


def _next_on_side(branch, side, prev, digits, log):
    """Next double zero on one side of the axis after those already in ``prev``."""
    direction = -1 if branch == NEGATIVE_Q else 1
    attempts = []
    if not prev:
        attempts.append(("seed", SEEDS[branch][side]))
    elif len(prev) >= 2:
        attempts.append(("secant", _predict(prev)))
    attempts.append(("valley", None))
    for name, guess in attempts:
        try:
            if name == "valley":
                q0 = prev[-1][1].q_star if prev else to_mpf(SEEDS[branch][side][0]) * mpmath.mpf("0.9")
                with mp.workdps(digits + 10):
                    q0 = q0 + direction * (1 - abs(q0)) * mpmath.mpf("1e-4")
                guess = valley_track(side, q0, direction, min(digits, 30))
            sp = double_refine(Parameter(guess[0]), guess[1], digits)
        except ThetaError as exc:
            log.append(f"side {side:+d} #{len(prev) + 1}: {name} failed ({exc})")
            continue
        if _side_ok(sp, side, prev):
            sp.notes = f"found by {name}"
            return sp
        log.append(f"side {side:+d} #{len(prev) + 1}: {name} landed on q={mpmath.nstr(sp.q_star, 10)}"
                   f", y={mpmath.nstr(sp.y_star, 6)} (rejected)")
    raise ContinuationBreak(f"no further double zero on side {side:+d}", len(prev) + 1, {"log": log})


def spectrum_scan(branch: str = NEGATIVE_Q, k_max: int = 8, digits: int | None = None,
                  validate: bool = True, verify_rest: bool = False,
                  census_digits: int = 30) -> SpectrumTable:
    """Enumerate the first ``k_max`` spectral values of one branch."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    digits = digits or default_digits()
    sides = (-1, 1) if branch == NEGATIVE_Q else (-1,)
    found = {s: [] for s in sides}
    log: list[str] = []
    notes = []

    def merged():
        pts = [sp for s in sides for _, sp in found[s]]
        return sorted(pts, key=lambda sp: abs(sp.q_star))

    def extend(side):
        sp = _next_on_side(branch, side, found[side], digits, log)
        found[side].append((len(found[side]) + 1, sp))

    try:
        while True:
            for s in sides:
                if not found[s]:
                    extend(s)
            m = merged()
            # order is settled up to the smallest "last |q|" among the sides
            horizon = min(abs(found[s][-1][1].q_star) for s in sides)
            settled = [sp for sp in m if abs(sp.q_star) <= horizon]
            if len(settled) >= k_max:
                break
            lag = min(sides, key=lambda s: abs(found[s][-1][1].q_star))
            extend(lag)
    except ContinuationBreak as exc:
        notes.append(f"continuation stopped: {exc}")
        if exc.diagnostics:
            log.extend(exc.diagnostics.get("log", []))
        m = merged()
        horizon = min(abs(found[s][-1][1].q_star) for s in sides if found[s]) if all(found[s] for s in sides) else 0
        settled = [sp for sp in m if abs(sp.q_star) <= horizon]

    entries = settled[:k_max]
    for k, sp in enumerate(entries, start=1):
        sp.k = k
        if verify_rest:
            sp.rest_simple, extra = _rest_simple(sp, digits, None)
            sp.notes = "; ".join(filter(None, [sp.notes, extra]))
        if validate:
            _validate_count(sp, k, census_digits)
    table = SpectrumTable(branch, entries, notes="; ".join(notes + log))
    if len(entries) >= 4:
        table.fit = estimate_asymptotics(table)
    return table


def _validate_count(sp: SpectralPoint, k: int, census_digits: int):
    """Complex-pair count k-1 just before q*, k just after."""
    direction = -1 if sp.branch == NEGATIVE_Q else 1
    with mp.workdps(census_digits + 10):
        eps = (1 - abs(sp.q_star)) * mpmath.mpf("1e-4")
        before = sp.q_star - direction * eps
        after = sp.q_star + direction * eps
    try:
        b = complex_pairs_at(before, census_digits)
        a = complex_pairs_at(after, census_digits)
    except ThetaError as exc:
        sp.notes = "; ".join(filter(None, [sp.notes, f"pair count unavailable: {exc}"]))
        return
    tag = "pairs ok" if (b, a) == (k - 1, k) else "PAIR COUNT MISMATCH"
    sp.notes = "; ".join(filter(None, [sp.notes, f"{tag}: {b} before, {a} after"]))


def estimate_asymptotics(table: SpectrumTable) -> AsymptoticFit:
    """Median of k (1 - |q_k|) over the upper half of k, and |y| at the largest k."""
    e = table.entries
    if len(e) < 4:
        raise TooFewEntries(f"need >= 4 entries, have {len(e)}")
    gaps = [sp.k * (1 - abs(float(sp.q_star))) for sp in e]
    top = gaps[len(gaps) // 2:]
    pos = table.branch == POSITIVE_Q
    return AsymptoticFit(
        slope_estimate=statistics.median(top),
        y_limit_estimate=abs(float(e[-1].y_star)),
        k_range_used=(e[len(e) // 2].k, e[-1].k),
        scaled_gaps=gaps,
        target_slope=math.pi / 2 if pos else math.pi / 8,
        target_y_limit=math.exp(math.pi) if pos else math.exp(math.pi / 2),
    )


def parity_location_check(sp: SpectralPoint, seq: RealZeroSeq) -> CheckReport:
    """Sign, extremum kind and position of the double zero among the real zeros at q*."""
    zeros = list(seq.zeros)
    tol = max((z.uncertainty for z in zeros if z.multiplicity == DOUBLE), default=mpmath.mpf(0))
    match = [z for z in zeros if abs(z.x - sp.y_star) <= max(tol, abs(sp.y_star) * mpmath.mpf(10) ** -8)]
    if not match:
        zeros.append(RealZero(sp.y_star, DOUBLE, sp.residual_theta, (sp.y_star, sp.y_star)))
    neg = sorted((z for z in zeros if z.x < 0), key=lambda z: z.x)
    posz = sorted((z for z in zeros if z.x > 0), key=lambda z: z.x)
    y = sp.y_star
    wit = []
    # negative double zeros are minima, positive ones maxima: holds for every q < 0
    kind_ok = (sp.kind == LOCAL_MIN) == (y < 0)
    wit.append(Witness(f"k={sp.k} kind vs sign", f"{sp.kind}, y={fmt(y, 8)}", "-", kind_ok))
    conj = []
    if sp.branch == NEGATIVE_Q:
        conj.append(Witness(f"k={sp.k} parity", f"y={fmt(y, 8)}", "odd k -> y<0, even k -> y>0",
                            (y < 0) == (sp.k % 2 == 1)))
        if sp.k % 2:
            rightmost = bool(neg) and abs(neg[-1].x - y) <= abs(y) * mpmath.mpf(10) ** -8
            conj.append(Witness(f"k={sp.k} rightmost negative zero", fmt(neg[-1].x if neg else "none", 8),
                                f"y={fmt(y, 8)}", rightmost))
        else:
            second = len(posz) >= 2 and abs(posz[1].x - y) <= abs(y) * mpmath.mpf(10) ** -8
            conj.append(Witness(f"k={sp.k} second positive zero from the left",
                                fmt(posz[1].x if len(posz) > 1 else "none", 8), f"y={fmt(y, 8)}", second))
    else:
        rightmost = bool(neg) and abs(neg[-1].x - y) <= abs(y) * mpmath.mpf(10) ** -8
        conj.append(Witness(f"k={sp.k} rightmost real zero", fmt(neg[-1].x if neg else "none", 8),
                            f"y={fmt(y, 8)}", rightmost))
    if not kind_ok:
        status = FAIL
    elif all(w.ok for w in conj):
        status = CONJECTURE_PASS if sp.branch == NEGATIVE_Q else PASS
    else:
        status = CONJECTURE_VIOLATION if sp.branch == NEGATIVE_Q else FAIL
    notes = ("even k: the double zero is positive, so its position is read among the positive zeros "
             "(second from the left, after the zero in (0, -1/q)); the literal reading among negative "
             "zeros is not meaningful for a positive point") if sp.branch == NEGATIVE_Q and sp.k % 2 == 0 else ""
    return CheckReport(f"double-zero-position-k{sp.k}", status, wit + conj, notes,
                       ["odd k: negative local minimum, rightmost negative zero; "
                        "even k: positive local maximum"])
