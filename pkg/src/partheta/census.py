"""Zero counting in a disk by the argument principle, and complex-pair census."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .core import Parameter, _as_param, default_digits, evaluate
from .errors import ContourTooClose, NonIntegerWinding
from .zeros import DEFAULT_J_MAX, real_zeros

MIN_NODES = 256
MARGIN = 4
MAX_DEPTH = 40


@dataclass
class CensusResult:
    q: Parameter
    radius: float
    total_inside: int
    real_inside: int
    complex_pairs: int
    contour_margin: mpmath.mpf


@dataclass
class _Winding:
    count: int
    margin: mpmath.mpf
    nodes: int


def _phase_walk(p, radius: float, nodes: int, digits: int) -> _Winding:
    # theta(q, conj x) = conj theta(q, x), so the upper half circle carries half the winding
    def at(phi):
        with mp.workdps(digits + 10):
            x = radius * mpmath.expjpi(phi)
        r = evaluate(p, x, digits=digits)
        if abs(r.value) <= MARGIN * r.error_bound:
            raise ContourTooClose(f"contour |x|={float(radius):.6g} passes within the error bound of a zero")
        return mpmath.arg(r.value), abs(r.value), r.error_bound

    phis = [i / nodes for i in range(nodes + 1)]
    samples = [at(t) for t in phis]
    total = 0.0
    worst = mpmath.inf
    used = len(samples)
    stack = [(phis[i], samples[i], phis[i + 1], samples[i + 1], 0) for i in range(nodes)]
    stack.reverse()
    for _, s, _, _, _ in stack:
        worst = min(worst, s[1] / s[2] if s[2] else mpmath.inf)
    worst = min(worst, samples[-1][1] / samples[-1][2] if samples[-1][2] else mpmath.inf)
    while stack:
        t0, s0, t1, s1, depth = stack.pop()
        d = float(s1[0] - s0[0])
        d = (d + math.pi) % (2 * math.pi) - math.pi
        if abs(d) < math.pi / 2:
            total += d
            continue
        if depth >= MAX_DEPTH:
            raise NonIntegerWinding(f"phase jump unresolved near angle {t0:.6g}*pi")
        tm = (t0 + t1) / 2
        sm = at(tm)
        used += 1
        if sm[2]:
            worst = min(worst, sm[1] / sm[2])
        stack.append((tm, sm, t1, s1, depth + 1))
        stack.append((t0, s0, tm, sm, depth + 1))
    w = 2 * total / (2 * math.pi)
    n = round(w)
    if abs(w - n) > 0.01:
        raise NonIntegerWinding(f"accumulated phase {w:.6f} turns is not an integer")
    return _Winding(n, worst, used)


def count_total(p, radius: float, nodes: int = MIN_NODES, digits: int | None = None,
                return_margin: bool = False):
    """Number of zeros of theta(q, .) in |x| < radius, with multiplicity."""
    p = _as_param(p)
    digits = digits or default_digits()
    if nodes < MIN_NODES:
        raise ValueError(f"nodes must be >= {MIN_NODES}")
    if p.q == 0:
        w = _Winding(0, mpmath.inf, 0)
    else:
        try:
            w = _phase_walk(p, radius, nodes, digits)
        except NonIntegerWinding:
            w = _phase_walk(p, radius, 2 * nodes, digits)
    if w.margin <= MARGIN:
        raise ContourTooClose(f"contour |x|={float(radius):.6g} passes within the error bound of a zero")
    return (w.count, w.margin) if return_margin else w.count


def census(p, j_max: int = DEFAULT_J_MAX, digits: int | None = None, radius: float | None = None,
           nodes: int = MIN_NODES) -> CensusResult:
    """Total, real and complex-pair zero counts inside |x| < |q|^-(j_max+1/2)."""
    p = _as_param(p)
    digits = digits or default_digits()
    seq = real_zeros(p, j_max, digits, radius=radius)
    r = seq.scan_radius
    for bump in (0.0, 0.1, -0.1, 0.2, -0.2):
        rr = r * abs(float(p.q)) ** (-bump) if bump else r
        try:
            total, margin = count_total(p, rr, nodes, digits, return_margin=True)
            break
        except ContourTooClose:
            continue
    else:
        raise ContourTooClose(f"no admissible radius near {r:.6g}")
    if rr > r:
        # zeros between the scan radius and the bumped contour must be counted too
        seq = real_zeros(p, digits=digits, radius=rr * 1.01)
    real = seq.count_inside(rr)
    diff = total - real
    if diff < 0 or diff % 2:
        raise NonIntegerWinding(f"total {total} and real {real} counts are inconsistent")
    return CensusResult(p, rr, total, real, diff // 2, margin)
