"""Bernoulli numbers, Pochhammer products and the Hurwitz zeta function.

Everything here is written from scratch on top of :mod:`fractions` and
:mod:`math`; there is deliberately no Gamma function. Ratios
Gamma(z + k) / Gamma(z) are always formed as rising products, which stay
finite at the Gamma poles.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .core import (
    DEFAULT_CONTROL,
    ConvergenceError,
    DomainError,
    PoleError,
    SeriesControl,
    UnsupportedOrderError,
)

__all__ = [
    "K_MAX",
    "bernoulli_number",
    "bernoulli_polynomial",
    "pochhammer_ratio",
    "hurwitz_zeta",
    "riemann_zeta",
    "hurwitz_asymptotic",
]

#: Largest Bernoulli index held in the exact table.
K_MAX = 32

# Number of B_2k correction terms in the Hurwitz tail.
_EM_TERMS = 10

_EPS = 2.0**-52


@lru_cache(maxsize=1)
def _bernoulli_table() -> tuple[Fraction, ...]:
    # sum_{j<=m} C(m+1, j) B_j = 0, which fixes B_1 = -1/2
    table = [Fraction(1)]
    for m in range(1, K_MAX + 1):
        acc = sum((math.comb(m + 1, j) * table[j] for j in range(m)), Fraction(0))
        table.append(-acc / (m + 1))
    return tuple(table)


@lru_cache(maxsize=1)
def _bernoulli_floats() -> tuple[float, ...]:
    return tuple(float(b) for b in _bernoulli_table())


def _check_order(k: int, what: str) -> int:
    if k != int(k) or k < 0:
        raise DomainError(f"{what} must be a non-negative integer, got {k}")
    k = int(k)
    if k > K_MAX:
        raise UnsupportedOrderError(f"{what} {k} exceeds the supported maximum {K_MAX}")
    return k


def bernoulli_number(k: int) -> Fraction:
    """Exact Bernoulli number B_k (convention B_1 = -1/2).

    >>> bernoulli_number(2), bernoulli_number(4)
    (Fraction(1, 6), Fraction(-1, 30))
    """
    return _bernoulli_table()[_check_order(k, "Bernoulli index")]


def bernoulli_polynomial(m: int, x: float) -> float:
    """B_m(x) = sum_k C(m, k) B_k x^(m-k), summed in floating point."""
    m = _check_order(m, "Bernoulli polynomial order")
    b = _bernoulli_floats()
    # Horner in x over coefficients C(m, k) B_k, highest power first
    acc = 0.0
    for k in range(m + 1):
        acc = acc * x + math.comb(m, k) * b[k]
    return acc


def pochhammer_ratio(z: float, k: int) -> float:
    """Rising product z (z+1) ... (z+k-1), i.e. Gamma(z+k)/Gamma(z).

    Returns 1.0 for k == 0. Finite for every real z, including the poles of
    Gamma.
    """
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    out = 1.0
    for j in range(int(k)):
        out *= z + j
    return out


def _is_nonpositive_integer(s: float) -> bool:
    return s <= 0 and s == math.floor(s)


def _hurwitz_em(s: float, alpha: float, n: int) -> tuple[float, float, float]:
    """Euler-Maclaurin evaluation with n explicit terms.

    Returns (value, size of the last correction kept, magnitude scale of the
    summed pieces); the scale times machine epsilon estimates rounding error.
    """
    b = _bernoulli_floats()
    head = math.fsum((j + alpha) ** -s for j in range(n))
    w = n + alpha
    w_s = w ** -s
    pieces = [head, w * w_s / (s - 1.0), 0.5 * w_s]
    # factor = s (s+1) ... (s+2k-2) * w^(-s-2k+1), starting at k = 1
    factor = s * w_s / w
    for k in range(1, _EM_TERMS + 1):
        pieces.append(b[2 * k] / math.factorial(2 * k) * factor)
        factor *= (s + 2 * k - 1) * (s + 2 * k) / (w * w)
    scale = math.fsum(abs(p) for p in pieces)
    return math.fsum(pieces), abs(pieces[-1]), scale


def hurwitz_zeta(s: float, alpha: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Hurwitz zeta function zeta(s, alpha) for real s != 1 and alpha > 0.

    Valid on the whole real s axis through analytic continuation; any
    alpha > 0 is accepted, not only 0 < alpha <= 1.

    The sum over n < N is carried out explicitly and the remainder is
    replaced by its Euler-Maclaurin expansion (integral, half term and ten
    Bernoulli corrections) at w = N + alpha. For s >= 0, N starts where
    w >= max(10, s) and doubles until the last correction is below
    tolerance. For s < 0 the explicit terms grow and cancel against the
    tail, so N starts at 0 and grows only as far as needed. For
    non-positive integer s the expansion terminates and is exact at N = 0.

    Raises
    ------
    PoleError
        at s == 1.
    DomainError
        if alpha <= 0 or an argument is not finite.
    ConvergenceError
        if ``ctl.tolerance`` (relative, absolute below 1) cannot be met
        within ``ctl.max_terms`` explicit terms, or is swamped by
        cancellation in double precision.
    """
    s = float(s)
    alpha = float(alpha)
    if not (math.isfinite(s) and math.isfinite(alpha)):
        raise DomainError(f"non-finite argument s={s}, alpha={alpha}")
    if s == 1.0:
        raise PoleError("Hurwitz zeta has a simple pole at s = 1")
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")

    if _is_nonpositive_integer(s) and -s <= 2 * _EM_TERMS - 1:
        return _hurwitz_em(s, alpha, 0)[0]

    n = 0 if s < 0 else max(0, math.ceil(max(10.0, s) - alpha))
    while True:
        value, last, scale = _hurwitz_em(s, alpha, n)
        target = ctl.tolerance * max(abs(value), 1.0)
        if last <= 0.01 * target:
            rounding = _EPS * scale
            if rounding > target:
                raise ConvergenceError(
                    f"zeta({s}, {alpha}): rounding error ~{rounding:.1e} exceeds tolerance",
                    bound=rounding,
                )
            return value
        if n >= ctl.max_terms:
            raise ConvergenceError(
                f"zeta({s}, {alpha}) not converged with {n} explicit terms",
                bound=last,
            )
        n = min(max(2 * n, n + 1), ctl.max_terms)


def riemann_zeta(s: float, ctl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Riemann zeta(s), computed as zeta(s, 1)."""
    return hurwitz_zeta(s, 1.0, ctl)


def hurwitz_asymptotic(z: float, alpha: float, k_max: int) -> float:
    """Large-alpha asymptotic series for zeta(1 + z, alpha), cut at k_max.

    This is an approximation, not an exact value: the series diverges for
    fixed alpha as k_max grows, and is only useful while alpha is large
    compared to |z| + k_max.
    """
    if z == 0:
        raise PoleError("asymptotic series has a pole at z = 0 (s = 1)")
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if k_max < 2:
        raise DomainError(f"k_max must be >= 2, got {k_max}")
    _check_order(k_max, "k_max")
    b = _bernoulli_floats()
    series = math.fsum(
        b[k] / math.factorial(k) * pochhammer_ratio(z, k) * alpha ** (-z - k)
        for k in range(2, k_max + 1)
    )
    return alpha**-z / z + 0.5 * alpha ** (-1.0 - z) + series / z
