"""Arbitrary-precision evaluation of the partial theta function.

    theta(q, x) = sum_{j >= 0} q^(j(j+1)/2) x^j,   -1 < q < 1.

Every evaluation returns an :class:`EvalResult` carrying a proven bound on the
truncation remainder together with an estimate of the accumulated rounding
error at the working precision that was actually used.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .errors import DomainError, NoConvergence

DEFAULT_DIGITS = 64
MAX_TERMS = 200_000
EXP_HALF_PI = math.exp(math.pi / 2)


def default_digits() -> int:
    """Default precision, overridable by the ``THETA_DIGITS`` environment variable."""
    raw = os.environ.get("THETA_DIGITS")
    if raw is None:
        return DEFAULT_DIGITS
    digits = int(raw)
    if digits < 15:
        raise DomainError(f"THETA_DIGITS must be >= 15, got {digits}")
    return digits


def to_mpf(value, dps: int = 520):
    """Convert ``value`` to mpf without losing the decimal digits of strings."""
    if isinstance(value, (mpmath.mpf, mpmath.mpc)):
        return value
    with mp.workdps(dps):
        if isinstance(value, complex):
            return mpmath.mpc(value)
        return mpmath.mpf(value)


@dataclass(frozen=True)
class Parameter:
    """A validated real q in (-1, 1)."""

    q: mpmath.mpf

    def __init__(self, q):
        qv = to_mpf(q)
        if isinstance(qv, mpmath.mpc):
            raise DomainError("q must be real")
        if not (-1 < qv < 1):
            raise DomainError(f"q must lie in (-1, 1), got {mpmath.nstr(qv, 15)}")
        object.__setattr__(self, "q", qv)

    @property
    def sign(self) -> str:
        if self.q < 0:
            return "negative"
        return "positive" if self.q > 0 else "zero"

    @property
    def v(self):
        """v = -q, defined only for negative q."""
        return -self.q if self.q < 0 else None

    @property
    def near_one(self) -> bool:
        return abs(self.q) > 0.9

    def __float__(self) -> float:
        return float(self.q)


@dataclass(frozen=True)
class DerivOrder:
    dx: int = 0
    dq: int = 0

    def __post_init__(self):
        if not (0 <= self.dx <= 3):
            raise DomainError(f"dx must be in 0..3, got {self.dx}")
        if self.dq not in (0, 1):
            raise DomainError(f"dq must be 0 or 1, got {self.dq}")


@dataclass(frozen=True)
class EvalResult:
    value: mpmath.mpf
    tail_bound: mpmath.mpf
    terms_used: int
    digits: int
    round_bound: mpmath.mpf = mpmath.mpf(0)
    abs_sum: mpmath.mpf = mpmath.mpf(0)

    @property
    def error_bound(self):
        """Truncation remainder plus rounding estimate."""
        return self.tail_bound + self.round_bound


def _as_param(p) -> Parameter:
    return p if isinstance(p, Parameter) else Parameter(p)


def _coef(j: int, dx: int, dq: int) -> int:
    """Polynomial factor j(j-1)...(j-dx+1) * (j(j+1)/2)^dq of the differentiated term."""
    c = 1
    for i in range(dx):
        c *= j - i
    if dq:
        c *= j * (j + 1) // 2
    return c


def _first_index(dx: int, dq: int) -> int:
    return max(dx, 1) if dq else dx


def _plan(qa: float, xa: float, dx: int, dq: int, target: float, max_terms: int):
    """Float pre-pass: number of terms and log10 of the largest term."""
    j0 = _first_index(dx, dq)
    lq = math.log(qa)
    lx = math.log(xa) if xa > 0 else -math.inf
    log_tgt = math.log(target)
    lmax = -math.inf
    j = j0
    while j <= max_terms:
        e = j * (j + 1) // 2 - dq
        lt = e * lq + (j - dx) * lx + math.log(_coef(j, dx, dq))
        lmax = max(lmax, lt)
        lr = (j + 1) * lq + lx + math.log(_coef(j + 1, dx, dq) / _coef(j, dx, dq))
        if lr <= -math.log(2) and lt + lr - math.log1p(-math.exp(lr)) <= log_tgt - math.log(2):
            return j - j0 + 1, lmax / math.log(10)
        j += 1
    raise NoConvergence(
        f"tail criterion not met within {max_terms} terms (|q|={qa:.6g}, |x|={xa:.6g})"
    )


def _symbolic_q0(x, dx: int, dq: int):
    if dq == 0:
        return mpmath.mpf(1) if dx == 0 else mpmath.mpf(0)
    if dx == 0:
        return x
    return mpmath.mpf(1) if dx == 1 else mpmath.mpf(0)


def evaluate(p, x, order: DerivOrder | None = None, target_abs_err=None,
             digits: int | None = None, max_terms: int = MAX_TERMS) -> EvalResult:
    """Evaluate d^dx/dx^dx d^dq/dq^dq theta(q, x).

    ``x`` may be real or complex; ``q`` stays real. The returned value is within
    ``tail_bound + round_bound`` of the exact value. ``target_abs_err`` defaults
    to ``10**-digits``.
    """
    p = _as_param(p)
    order = order or DerivOrder()
    dx, dq = order.dx, order.dq
    digits = digits or default_digits()
    if digits < 15:
        raise DomainError("digits must be >= 15")
    target = mpmath.mpf(10) ** (-digits) if target_abs_err is None else to_mpf(target_abs_err)
    if not target > 0:
        raise DomainError("target_abs_err must be positive")

    xv = to_mpf(x)
    qa = abs(float(p.q))
    xa = float(abs(xv))
    j0 = _first_index(dx, dq)
    dps = digits + 10

    if p.q == 0 or xa == 0:
        with mp.workdps(dps):
            if p.q == 0:
                val = _symbolic_q0(+xv, dx, dq)
            else:
                # only the first non-vanishing term survives at x = 0
                val = 0
                if j0 == dx:
                    e = j0 * (j0 + 1) // 2 - dq
                    val = _coef(j0, dx, dq) * (+p.q) ** e
                val = mpmath.mpf(val) if not isinstance(xv, mpmath.mpc) else mpmath.mpc(val)
            return EvalResult(val, mpmath.mpf(0), 1, dps, mpmath.mpf(0), abs(val))

    n_est, log_max = _plan(qa, xa, dx, dq, float(target), max_terms)
    guard = 10 + math.ceil(2 * math.log10(n_est + 2)) + max(0, math.ceil(log_max))
    dps = digits + guard

    with mp.workdps(dps):
        q = +p.q
        xw = +xv
        half = mpmath.mpf(1) / 2
        aq = abs(q)
        ax = abs(xw)
        e0 = j0 * (j0 + 1) // 2 - dq
        base = q ** e0 * xw ** (j0 - dx)        # q^(e_j - dq) x^(j - dx)
        qpow = q ** (j0 + 1)                    # q^(j+1)
        aqpow = aq ** (j0 + 1)
        total = 0
        abs_sum = mpmath.mpf(0)
        j = j0
        while True:
            c = _coef(j, dx, dq)
            term = c * base
            total += term
            at = abs(term)
            abs_sum += at
            c_next = _coef(j + 1, dx, dq)
            ratio = aqpow * ax * c_next / c
            if ratio <= half:
                tail = at * ratio / (1 - ratio)
                if tail <= target / 2:
                    break
            if j - j0 + 1 >= max_terms:
                raise NoConvergence(
                    f"tail criterion not met within {max_terms} terms "
                    f"(|q|={qa:.6g}, |x|={xa:.6g})"
                )
            base *= qpow * xw
            qpow *= q
            aqpow *= aq
            j += 1
        terms = j - j0 + 1
        eps = mpmath.mpf(10) ** (1 - dps)
        round_bound = terms * terms * abs_sum * eps
        return EvalResult(total, tail, terms, dps, round_bound, abs_sum)


def theta(q, x, dx: int = 0, dq: int = 0, digits: int | None = None):
    """Plain value of a theta derivative (no bounds)."""
    return evaluate(q, x, DerivOrder(dx, dq), digits=digits).value


def fe_residual(p, x, digits: int | None = None, with_bound: bool = False):
    """theta(q, x) - 1 - q x theta(q, q x)."""
    p = _as_param(p)
    digits = digits or default_digits()
    xv = to_mpf(x)
    with mp.workdps(digits + 20):
        qx = p.q * xv
    r0 = evaluate(p, xv, digits=digits)
    r1 = evaluate(p, qx, digits=digits)
    with mp.workdps(max(r0.digits, r1.digits)):
        res = r0.value - 1 - qx * r1.value
        bound = r0.error_bound + abs(qx) * r1.error_bound
    return (res, bound) if with_bound else res


def de_residual(p, x, digits: int | None = None, with_bound: bool = False):
    """2 q theta_q - 2 x theta_x - x^2 theta_xx."""
    p = _as_param(p)
    if p.q == 0:
        raise DomainError("de_residual requires q != 0")
    digits = digits or default_digits()
    xv = to_mpf(x)
    parts = [(p, xv, DerivOrder(0, 1)), (p, xv, DerivOrder(1, 0)), (p, xv, DerivOrder(2, 0))]
    results = [evaluate(*a, digits=digits) for a in parts]
    with mp.workdps(max(r.digits for r in results)):
        tq, tx, txx = (r.value for r in results)
        res = 2 * p.q * tq - 2 * xv * tx - xv ** 2 * txx
        bound = (2 * abs(p.q) * results[0].error_bound + 2 * abs(xv) * results[1].error_bound
                 + abs(xv) ** 2 * results[2].error_bound)
    return (res, bound) if with_bound else res


def psi_parts(v, x, digits: int | None = None):
    """The even and odd summands psi1 = theta(v^4, -x^2/v), psi2 = -v x theta(v^4, -v x^2).

    Returns ``(psi1_result, psi2_value, psi2_bound)``.
    """
    digits = digits or default_digits()
    vv = to_mpf(v)
    xv = to_mpf(x)
    with mp.workdps(digits + 20):
        v4 = Parameter(vv ** 4)
        a1 = -xv ** 2 / vv
        a2 = -vv * xv ** 2
    r1 = evaluate(v4, a1, digits=digits)
    r2 = evaluate(v4, a2, digits=digits)
    with mp.workdps(max(r1.digits, r2.digits)):
        psi2 = -vv * xv * r2.value
        psi2_bound = abs(vv * xv) * r2.error_bound
    return r1, psi2, psi2_bound


def decomposition_residual(p, x, digits: int | None = None, with_bound: bool = False):
    """theta(-v, x) - theta(v^4, -x^2/v) + v x theta(v^4, -v x^2) for q = -v < 0."""
    p = _as_param(p)
    if not p.q < 0:
        raise DomainError("decomposition_residual requires q in (-1, 0)")
    digits = digits or default_digits()
    xv = to_mpf(x)
    r0 = evaluate(p, xv, digits=digits)
    r1, psi2, b2 = psi_parts(p.v, xv, digits=digits)
    with mp.workdps(max(r0.digits, r1.digits)):
        res = r0.value - r1.value - psi2
        bound = r0.error_bound + r1.error_bound + b2
    return (res, bound) if with_bound else res


def fourfold_residual(p, x, digits: int | None = None, with_bound: bool = False):
    """theta(q,x) - 1 - qx - q^3x^2 - q^6x^3 - q^10x^4 theta(q, q^4 x)."""
    p = _as_param(p)
    digits = digits or default_digits()
    xv = to_mpf(x)
    with mp.workdps(digits + 20):
        q = p.q
        x4 = q ** 4 * xv
        lead = q ** 10 * xv ** 4
    r0 = evaluate(p, xv, digits=digits)
    r1 = evaluate(p, x4, digits=digits)
    with mp.workdps(max(r0.digits, r1.digits)):
        poly = 1 + q * xv + q ** 3 * xv ** 2 + q ** 6 * xv ** 3
        res = r0.value - poly - lead * r1.value
        bound = r0.error_bound + abs(lead) * r1.error_bound
    return (res, bound) if with_bound else res


def phi(k, tau, digits: int | None = None) -> EvalResult:
    """phi_k(tau) = sum (-1)^j tau^(k j + j(j-1)/2) = theta(tau, -tau^(k-1)); real k > 0."""
    digits = digits or default_digits()
    t = to_mpf(tau)
    kk = to_mpf(k)
    if not kk > 0:
        raise DomainError("phi requires k > 0")
    if not (0 <= t < 1):
        raise DomainError("phi requires tau in [0, 1)")
    if t == 0:
        return EvalResult(mpmath.mpf(1), mpmath.mpf(0), 1, digits)
    with mp.workdps(digits + 20):
        x = -t ** (kk - 1)
    return evaluate(Parameter(t), x, digits=digits)


def xi(k, tau):
    """xi_k(tau) = 1 / (1 + tau^k)."""
    kk = to_mpf(k)
    t = to_mpf(tau)
    return 1 / (1 + t ** kk)


def limit_function(x):
    """Pointwise limit (1 - x) / (1 + x^2) of theta(q, x) as q -> -1+, |x| < e^(pi/2)."""
    xv = to_mpf(x)
    if abs(xv) >= mpmath.exp(mpmath.pi / 2):
        raise DomainError("the limit applies only for |x| < e^(pi/2)")
    return (1 - xv) / (1 + xv ** 2)
