"""Closed-form upper and lower bounds on R_{r,s}(k), evaluated in log space (nats).

The constants c, c', c(delta) have no known values; they default to 1 and are
reported alongside every row.  ``chernoff_c_delta`` gives a concrete
alternative for c(delta) from the relative-entropy form of Chernoff's bound.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, TextIO

from .params import DEFAULT_DELTA, ParameterError, as_fraction

LN2 = math.log(2)

HEADER = ["r", "s", "k", "eps", "upper_cfhmsv", "lower_cfhmsv", "lower_thm12", "lower_thm41",
          "lower_thm42", "lower_random", "turan_upper", "constants"]
EXPONENT_FIELDS = ["upper_cfhmsv", "lower_cfhmsv", "lower_thm12", "lower_thm41", "lower_thm42",
                   "lower_random"]


@dataclass(frozen=True)
class BoundConstants:
    c: float = 1.0
    c_prime: float = 1.0
    delta: Fraction = DEFAULT_DELTA
    c_delta: float | str = 1.0  # a number, or "chernoff" for the per-row relative-entropy value

    def __post_init__(self):
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if self.c <= 0 or self.c_prime <= 0 or self.delta <= 0:
            raise ParameterError("constants must be positive")
        if self.c_delta != "chernoff" and float(self.c_delta) <= 0:
            raise ParameterError("c_delta must be positive or 'chernoff'")

    def label(self) -> str:
        return f"c={self.c:g};c_prime={self.c_prime:g};delta={self.delta};c_delta={self.c_delta}"


@dataclass(frozen=True)
class BoundRow:
    r: int
    s: int
    k: int
    eps: Fraction
    upper_cfhmsv: float
    lower_cfhmsv: float
    lower_thm12: float
    lower_thm41: float
    lower_thm42: float
    lower_random: float
    turan_upper: int | None
    constants: BoundConstants = field(default_factory=BoundConstants)

    def bits(self, name: str) -> float:
        return getattr(self, name) / LN2


def kl_bernoulli(a: float, q: float) -> float:
    """Relative entropy D(a || q) between Bernoulli(a) and Bernoulli(q), in nats."""
    out = 0.0
    if a > 0:
        out += a * math.log(a / q)
    if a < 1:
        out += (1 - a) * math.log((1 - a) / (1 - q))
    return out


def chernoff_c_delta(r: int, s: int, k: int) -> float:
    """Largest c with P(Bin(r, 1/(k-1)) >= eps r) <= exp(-c eps r) via the relative-entropy bound.

    Returns 0 when eps <= 1/(k-1), where the bound says nothing.
    """
    eps = (r - s) / r
    q = 1 / (k - 1)
    if eps <= q:
        return 0.0
    return kl_bernoulli(eps, q) / eps


def evaluate_bounds(r: int, s: int, k: int, constants: BoundConstants | None = None) -> BoundRow:
    constants = constants or BoundConstants()
    if not 1 <= s < r:
        raise ParameterError(f"bounds need 1 <= s < r, got s={s}, r={r}")
    if k < 2:
        raise ParameterError("bounds need k >= 2")
    eps = Fraction(r - s, r)
    d = r - s
    epsf = float(eps)
    upper = constants.c * k * d * d / r * math.log(r / min(s, d))
    lower_cf = constants.c_prime * k * d**3 / (r * r)
    lower_12 = float(constants.delta) * k * d * d / r * LN2
    ratio = epsf * (k - 1) / math.e
    lower_41 = max(0.0, epsf * r / 2 * math.log(ratio)) if k > 1 else 0.0
    c_delta = chernoff_c_delta(r, s, k) if constants.c_delta == "chernoff" else float(constants.c_delta)
    lower_42 = c_delta * epsf * r
    lower_rand = epsf * k / 6 * LN2
    turan = k * k if k * d <= r else None
    return BoundRow(r, s, k, eps, upper, lower_cf, lower_12, lower_41, lower_42, lower_rand,
                    turan, constants)


def _fmt(x) -> str:
    if x is None:
        return "NA"
    if isinstance(x, Fraction):
        x = float(x)
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def row_cells(row: BoundRow, with_bits: bool = False) -> list[str]:
    cells = [str(row.r), str(row.s), str(row.k), _fmt(row.eps)]
    cells += [_fmt(getattr(row, f)) for f in EXPONENT_FIELDS]
    cells += [_fmt(row.turan_upper), row.constants.label()]
    if with_bits:
        cells += [_fmt(row.bits(f)) for f in EXPONENT_FIELDS]
    return cells


def emit_bounds_table(r_range: Iterable[int], s_rule: Callable[[int], int], k_range: Iterable[int],
                      constants: BoundConstants | None, output: TextIO, with_bits: bool = False) -> int:
    """Write one CSV row per (r, k) grid point with s = s_rule(r); returns the row count.

    Grid points where s_rule gives s outside [1, r) are skipped.
    """
    r_values = list(r_range)
    k_values = list(k_range)
    if not r_values or not k_values:
        raise ValueError("ranges must be non-empty")
    writer = csv.writer(output, lineterminator="\n")
    header = list(HEADER)
    if with_bits:
        header += [f + "_bits" for f in EXPONENT_FIELDS]
    writer.writerow(header)
    count = 0
    for r in r_values:
        s = s_rule(r)
        if not 1 <= s < r:
            continue
        for k in k_values:
            writer.writerow(row_cells(evaluate_bounds(r, s, k, constants), with_bits))
            count += 1
    return count


def s_rule_from_name(name: str) -> Callable[[int], int]:
    """Parse an s rule: 'r-log2' (s = r - ceil(log2 r)), 'r-<int>', 'frac:<a>/<b>' (s = floor(a r / b))."""
    if name == "r-log2":
        return lambda r: r - math.ceil(math.log2(r))
    if name.startswith("r-"):
        d = int(name[2:])
        return lambda r: r - d
    if name.startswith("frac:"):
        f = Fraction(name[5:])
        return lambda r: math.floor(f * r)
    raise ValueError(f"unknown s rule {name!r}")
