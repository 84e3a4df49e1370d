"""Derived construction parameters for the random blow-up colouring."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

DEFAULT_DELTA = Fraction(1, 32)
DELTA_LIMIT = Fraction(1, 16)


class ParameterError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _pow2_ceil(x: Fraction) -> int:
    # 2**x is irrational unless x is an integer, so high-precision rounding is exact
    if x.denominator == 1:
        return 1 << x.numerator if x >= 0 else 1
    with mpmath.workdps(int(x) // 3 + 40):
        return int(mpmath.ceil(mpmath.power(2, mpmath.mpf(x.numerator) / x.denominator)))


def _pow2_floor(x: Fraction) -> int:
    if x.denominator == 1:
        return 1 << x.numerator if x >= 0 else 0
    with mpmath.workdps(int(x) // 3 + 40):
        return int(mpmath.floor(mpmath.power(2, mpmath.mpf(x.numerator) / x.denominator)))


@dataclass(frozen=True)
class ConstructionParams:
    r: int
    s: int
    k: int
    delta: Fraction
    eps: Fraction
    C: Fraction
    m_exponent: float
    n_exponent: float
    m: int
    n: int
    p: Fraction
    t: Fraction
    t_int: int
    in_theorem_regime: bool
    in_turan_regime: bool
    non_canonical: bool = False

    @property
    def t_real(self) -> float:
        return float(self.t)


def theorem_regime(r: int, s: int, k: int, C: Fraction, eps: Fraction) -> bool:
    """s <= r - C ln r and k >= (C/eps) ln r, with ln r rounded to a double."""
    ln_r = math.log(r)
    return s <= r - float(C) * ln_r and k >= float(C / eps) * ln_r


def derive_params(r: int, s: int, k: int, delta=DEFAULT_DELTA) -> ConstructionParams:
    delta = as_fraction(delta)
    if r < 2:
        raise ParameterError(f"need r >= 2, got r={r}")
    if not 1 <= s < r:
        raise ParameterError(f"construction needs 1 <= s < r, got s={s}, r={r}")
    if k < 2:
        raise ParameterError(f"need k >= 2, got k={k}")
    if not 0 < delta < DELTA_LIMIT:
        raise ParameterError(f"delta must lie in (0, 1/16), got {delta}")

    eps = Fraction(r - s, r)
    C = 1 / delta**3
    m_exp = delta**2 * eps * k
    n_exp = delta**4 * eps**2 * r * k
    t = delta * eps * k * k
    return ConstructionParams(
        r=r, s=s, k=k, delta=delta, eps=eps, C=C,
        m_exponent=float(m_exp),
        n_exponent=float(n_exp),
        m=max(1, _pow2_ceil(m_exp)),
        n=max(2, _pow2_floor(n_exp)),
        p=1 - 5 * delta * eps,
        t=t,
        t_int=math.ceil(t),
        in_theorem_regime=theorem_regime(r, s, k, C, eps),
        in_turan_regime=k * (r - s) <= r,
    )


def override_params(base: ConstructionParams, m: int | None = None, n: int | None = None,
                    p=None) -> ConstructionParams:
    changes: dict = {}
    if m is not None:
        if m < 1:
            raise ParameterError(f"m override must be >= 1, got {m}")
        changes["m"] = int(m)
    if n is not None:
        if n < 2:
            raise ParameterError(f"n override must be >= 2, got {n}")
        changes["n"] = int(n)
    if p is not None:
        p = as_fraction(p)
        if not 0 <= p <= 1:
            raise ParameterError(f"p override must lie in [0, 1], got {p}")
        changes["p"] = p
    return dataclasses.replace(base, non_canonical=True, **changes)


def desk_params(r: int, s: int, k: int, *, n: int, m: int | None = None, p=None,
                delta=DEFAULT_DELTA) -> ConstructionParams:
    """derive_params followed by explicit overrides; the usual entry point at runnable sizes."""
    return override_params(derive_params(r, s, k, delta), m=m, n=n, p=p)
