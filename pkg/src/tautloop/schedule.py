"""Closed-form constants, interval schedules and obstruction arithmetic.

Everything here is exact: quantities of the form (rational) * sqrt(rational)
are represented by their sign and square, compared by squaring, and never
converted to floating point.  Big integers such as C^(2^n) stay exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable


class ScheduleError(ValueError):
    pass


@dataclass(frozen=True)
class SqrtRational:
    """The real number sign * sqrt(square), square a nonnegative rational."""

    sign: int
    square: Fraction

    @classmethod
    def of_ratio(cls, p, q=1) -> "SqrtRational":
        """The rational number p/q itself."""
        val = Fraction(p, q)
        sign = (val > 0) - (val < 0)
        return cls(sign, val * val)

    @classmethod
    def sqrt_of(cls, p, q=1) -> "SqrtRational":
        val = Fraction(p, q)
        if val < 0:
            raise ScheduleError("square root of a negative rational")
        return cls(1 if val else 0, val)

    def __mul__(self, other: "SqrtRational") -> "SqrtRational":
        return SqrtRational(self.sign * other.sign, self.square * other.square)

    def scale(self, r) -> "SqrtRational":
        return self * SqrtRational.of_ratio(r)

    def __abs__(self) -> "SqrtRational":
        return SqrtRational(abs(self.sign), self.square)

    def _cmp(self, other: "SqrtRational") -> int:
        if self.sign != other.sign:
            return self.sign - other.sign
        if self.square == other.square:
            return 0
        bigger = 1 if self.square > other.square else -1
        return bigger * (1 if self.sign >= 0 else -1) if self.sign or other.sign else 0

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def is_rational(self) -> bool:
        num, den = self.square.numerator, self.square.denominator
        return math.isqrt(num) ** 2 == num and math.isqrt(den) ** 2 == den

    def ceil(self) -> int:
        """Least integer >= self, exact."""
        if self.sign == 0:
            return 0
        if self.sign < 0:
            return -SqrtRational(1, self.square).floor()
        num, den = self.square.numerator, self.square.denominator
        guess = math.isqrt(num // den)
        while Fraction(guess * guess) < self.square:
            guess += 1
        return guess

    def floor(self) -> int:
        if self.sign == 0:
            return 0
        if self.sign < 0:
            return -SqrtRational(1, self.square).ceil()
        num, den = self.square.numerator, self.square.denominator
        guess = math.isqrt(num // den) + 1
        while Fraction(guess * guess) > self.square:
            guess -= 1
        return guess

    def simplified(self) -> tuple[Fraction, int]:
        """(coefficient, radicand) with squarefree integer radicand."""
        num, den = self.square.numerator, self.square.denominator
        inner = num * den  # sqrt(num/den) = sqrt(num*den)/den
        coeff = Fraction(self.sign, den)
        outer = 1
        d = 2
        while d * d <= inner:
            while inner % (d * d) == 0:
                inner //= d * d
                outer *= d
            d += 1
        return coeff * outer, inner

    def __str__(self) -> str:
        coeff, rad = self.simplified()
        if rad == 1 or coeff == 0:
            return str(coeff)
        if coeff == 1:
            return f"sqrt({rad})"
        return f"{coeff}*sqrt({rad})"

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "square": f"{self.square.numerator}/{self.square.denominator}",
            "display": str(self),
        }


def alpha_of(d: int) -> SqrtRational:
    """sqrt(2/(d+1)) for a complex of dimension d."""
    if d < 1:
        raise ScheduleError("dimension must be >= 1")
    return SqrtRational.sqrt_of(2, d + 1)


def beta_of(complex_, omega) -> int:
    """Maximum loop length over the chosen normally generating set."""
    omega.validate(complex_)
    if not omega.loops:
        raise ScheduleError("empty loop set has no maximum length")
    return max(len(lp) for lp in omega.loops)


@dataclass(frozen=True)
class Constants:
    d: int
    beta: int
    C: int

    @property
    def alpha(self) -> SqrtRational:
        return alpha_of(self.d)

    def __post_init__(self) -> None:
        if self.beta < 1 or self.C < 1:
            raise ScheduleError("beta and C must be positive")
        c = SqrtRational.of_ratio(self.C)
        if not (c * self.alpha > SqrtRational.of_ratio(self.beta)):
            raise ScheduleError("need C > beta/alpha")
        if not (c * self.alpha > SqrtRational.of_ratio(3)):
            raise ScheduleError("need C*alpha > 3")

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "alpha": self.alpha.to_json(),
            "beta": self.beta,
            "C": str(self.C),
        }


def choose_C(d: int, beta: int) -> int:
    """Least integer with C*alpha > beta and C*alpha > 3, by exact squaring."""
    if d < 1:
        raise ScheduleError("dimension must be >= 1")
    bound = max(beta, 3)
    # least C with C > bound/alpha = bound * sqrt((d+1)/2)
    target = SqrtRational.of_ratio(bound) * SqrtRational.sqrt_of(d + 1, 2)
    return target.floor() + 1


def S_of_F(C: int, F: Iterable[int]) -> tuple[int, ...]:
    """{0} together with C^(2^n) for n in the finite index set F."""
    out = {0}
    for n in sorted(set(int(n) for n in F)):
        if n < 0:
            raise ScheduleError("indices are naturals")
        if n > 32:
            raise ScheduleError("index too large for exact materialization")
        out.add(C ** (2 ** n))
    return tuple(sorted(out))


def m_of(S: Iterable[int]) -> int:
    """Minimum absolute value of a non-empty set of integers."""
    vals = [abs(int(x)) for x in S]
    if not vals:
        raise ScheduleError("m is undefined on the empty set")
    return min(vals)


def height_distance(d: int, n: int) -> SqrtRational:
    """Distance from the 0-level set to a vertex of height n: |n|/sqrt(d+1)."""
    return SqrtRational.sqrt_of(n * n, d + 1)


def kernel_length_lower_bound(d: int, S: Iterable[int], T: Iterable[int]) -> SqrtRational:
    """Shortest possible kernel element length: m(T-S) * sqrt(2/(d+1))."""
    s_set, t_set = set(S), set(T)
    if not s_set <= t_set:
        raise ScheduleError("need S contained in T")
    diff = t_set - s_set
    if not diff:
        raise ScheduleError("T - S is empty")
    return alpha_of(d).scale(m_of(diff))


@dataclass(frozen=True)
class Interval:
    n: int
    lower: SqrtRational  # alpha * C^(2^n)
    lower_ceil: int
    upper: int  # beta * C^(2^n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lower": self.lower.to_json(),
            "lower_ceil": str(self.lower_ceil),
            "upper": str(self.upper),
        }


@dataclass(frozen=True)
class IntervalSchedule:
    """The containment superset {3} u Union_n [alpha C^(2^n), beta C^(2^n)].

    {3} always belongs to the superset; whether 3 actually lies in the
    spectrum is a separate dimension criterion (it does iff d >= 2), recorded
    in three_in_spectrum.
    """

    constants: Constants
    intervals: tuple[Interval, ...]
    three_in_spectrum: bool
    disjointness_checked: bool

    def to_json(self) -> dict:
        return {
            "constants": self.constants.to_json(),
            "base": [3],
            "three_in_spectrum": self.three_in_spectrum,
            "intervals": [iv.to_json() for iv in self.intervals],
            "disjointness_checked": self.disjointness_checked,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def predicted_intervals(constants: Constants, n_max: int) -> IntervalSchedule:
    """Intervals for n = 0..n_max with an exact disjointness certificate."""
    if n_max < 0:
        raise ScheduleError("n_max must be a natural")
    if n_max > 32:
        raise ScheduleError("index too large for exact materialization")
    alpha = constants.alpha
    intervals = []
    for n in range(n_max + 1):
        power = constants.C ** (2 ** n)
        lower = alpha.scale(power)
        intervals.append(Interval(n, lower, lower.ceil(), constants.beta * power))
    for prev, nxt in zip(intervals, intervals[1:]):
        if not (SqrtRational.of_ratio(prev.upper) < nxt.lower):
            raise ScheduleError(f"intervals {prev.n} and {nxt.n} overlap")
    return IntervalSchedule(constants, tuple(intervals), constants.d >= 2, True)


def qi_obstruction(F: Iterable[int], Fprime: Iterable[int], C: int) -> dict[int, int]:
    """For each n in the symmetric difference, the threshold C^(2^n - 1) that
    any quasi-isometry constant k must exceed."""
    sym = set(int(n) for n in F) ^ set(int(n) for n in Fprime)
    out = {}
    for n in sorted(sym):
        if n > 32:
            raise ScheduleError("index too large for exact materialization")
        out[n] = C ** (2 ** n - 1)
    return out


def schedule_report(constants: Constants, n_max: int, F=(), Fprime=()) -> dict:
    """JSON-ready report with all big integers as decimal strings."""
    sched = predicted_intervals(constants, n_max)
    report = sched.to_json()
    if F or Fprime:
        report["qi_obstruction"] = {
            str(n): str(v) for n, v in qi_obstruction(F, Fprime, constants.C).items()
        }
        report["S_of_F"] = [str(x) for x in S_of_F(constants.C, F)]
    return report
