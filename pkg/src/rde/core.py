"""Parameter and initial-data containers shared by every other module.

All real-valued quantities are :class:`fractions.Fraction` instances, which
are kept in lowest terms with a positive denominator, so equality is exact
and structural.  Integer powers follow ``0**0 == 1``.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]

X = "X"
Y = "Y"


class RDEError(Exception):
    """Base class for errors raised by this package."""


class StructuralError(RDEError, ValueError):
    """Initial data does not have the shape required by the parameters."""


class ZeroAnchor(RDEError, ZeroDivisionError):
    """x_0 or y_0 is zero, so u_0 / v_0 are undefined."""

    def __init__(self, which: str):
        super().__init__(f"{which}_0 = 0: the quotient substitution is undefined")
        self.which = which


class ZeroInitialValue(RDEError, ValueError):
    """A zero initial value makes the quotient substitution lose information."""

    def __init__(self, which: str, index: int):
        super().__init__(f"{which}_{index} = 0 with p >= 1: closed form undefined")
        self.which = which
        self.index = index


class BreakdownAtIndex(RDEError, ArithmeticError):
    """A u/v factor needed by a closed-form product vanishes.

    Equivalent to the direct iteration hitting a zero denominator at the
    same index on the same side.
    """

    def __init__(self, index: int, side: str):
        super().__init__(f"zero {'u' if side == X else 'v'} factor at index {index}")
        self.index = index
        self.side = side


class DenominatorZero(RDEError, ZeroDivisionError):
    """The defining equation for side ``side`` has a zero denominator."""

    def __init__(self, side: str, at: int | None):
        super().__init__(f"denominator of the {side} equation vanishes at n={at}")
        self.side = side
        self.at = at


class ExponentCapExceeded(RDEError, OverflowError):
    pass


class TheoremInapplicable(RDEError, ValueError):
    pass


class InsufficientData(RDEError, ValueError):
    pass


def to_rational(value: RationalLike | float) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Strings accept ``"num/den"``, ``"num"`` and plain decimals.  Floats are
    converted exactly (binary expansion), which is rarely what a user means,
    so prefer strings.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            with unlimited_int_digits():
                return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    return to_rational(text)


@contextmanager
def unlimited_int_digits():
    """Lift the interpreter's int/str conversion limit for huge exact values."""
    get = getattr(sys, "get_int_max_str_digits", None)
    if get is None:
        yield
        return
    old = get()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def format_rational(value: Fraction) -> str:
    with unlimited_int_digits():
        return str(value)


def range_product(lo: int, hi: int, term: Callable[[int], Fraction]) -> Fraction:
    """Product of ``term(i)`` for ``i = lo..hi``; 1 when ``hi < lo``."""
    return reduce(lambda acc, i: acc * term(i), range(lo, hi + 1), Fraction(1))


def range_sum(lo: int, hi: int, term: Callable[[int], Fraction]) -> Fraction:
    """Sum of ``term(i)`` for ``i = lo..hi``; 0 when ``hi < lo``."""
    return reduce(lambda acc, i: acc + term(i), range(lo, hi + 1), Fraction(0))


@dataclass(frozen=True)
class SystemParams:
    """Coefficients a, b, alpha, beta, the exponent p and the delay k."""

    a: Fraction
    b: Fraction
    alpha: Fraction
    beta: Fraction
    p: int = 1
    k: int = 1

    def __post_init__(self):
        for name in ("a", "b", "alpha", "beta"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k!r}")
        if int(self.p) != self.p or self.p < 0:
            raise ValueError(f"p must be a nonnegative integer, got {self.p!r}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "p", int(self.p))

    @property
    def discriminant(self) -> Fraction:
        return self.a * self.alpha

    @property
    def x_shift(self) -> Fraction:
        """Inhomogeneous term a*beta + b of the two-step u recurrence."""
        return self.a * self.beta + self.b

    @property
    def y_shift(self) -> Fraction:
        """Inhomogeneous term alpha*b + beta of the two-step v recurrence."""
        return self.alpha * self.b + self.beta


@dataclass(frozen=True)
class InitialData:
    """Initial values x_{-k}..x_0 and y_{-k}..y_0, stored oldest first.

    Logical index ``i`` (``-k <= i <= 0``) lives at storage slot ``i + k``.
    """

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(to_rational(v) for v in self.x))
        object.__setattr__(self, "y", tuple(to_rational(v) for v in self.y))

    @property
    def k(self) -> int:
        return len(self.x) - 1

    def x_at(self, i: int) -> Fraction:
        return self.x[self.slot(i)]

    def y_at(self, i: int) -> Fraction:
        return self.y[self.slot(i)]

    def at(self, side: str, i: int) -> Fraction:
        return self.x_at(i) if side == X else self.y_at(i)

    def slot(self, i: int) -> int:
        k = len(self.x) - 1
        if not -k <= i <= 0:
            raise IndexError(f"initial index {i} outside -{k}..0")
        return i + k

    @classmethod
    def constant(cls, k: int, value: RationalLike = 1) -> "InitialData":
        v = to_rational(value)
        return cls((v,) * (k + 1), (v,) * (k + 1))


@dataclass(frozen=True)
class ValidationReport:
    structurally_valid: bool
    positivity: bool
    uv_definable: bool
    notes: tuple[str, ...] = field(default=())


def validate(params: SystemParams, init: InitialData) -> ValidationReport:
    """Check array lengths (hard error) and report the hypothesis flags.

    Positivity means every initial value is nonnegative and
    ``x_{-k} + x_0 > 0``, ``y_{-k} + y_0 > 0``.  ``uv_definable`` means
    ``x_0 != 0`` and ``y_0 != 0``.
    """
    k = params.k
    for name, arr in (("x", init.x), ("y", init.y)):
        if len(arr) != k + 1:
            raise StructuralError(f"{name} has {len(arr)} initial values, expected k+1 = {k + 1}")

    notes = []
    nonneg = all(v >= 0 for v in init.x + init.y)
    if not nonneg:
        notes.append("some initial value is negative")
    anchors = init.x_at(-k) + init.x_at(0) > 0 and init.y_at(-k) + init.y_at(0) > 0
    if not anchors:
        notes.append("x_{-k}+x_0 > 0 and y_{-k}+y_0 > 0 do not both hold")
    uv = init.x_at(0) != 0 and init.y_at(0) != 0
    if not uv:
        notes.append("x_0 or y_0 is zero")
    return ValidationReport(True, nonneg and anchors, uv, tuple(notes))


def check_closed_form_domain(params: SystemParams, init: InitialData) -> None:
    """Raise unless the quotient substitution describes the whole orbit."""
    validate(params, init)
    if init.x_at(0) == 0:
        raise ZeroAnchor("x")
    if init.y_at(0) == 0:
        raise ZeroAnchor("y")
    if params.p >= 1:
        for side, arr in ((X, init.x), (Y, init.y)):
            for slot, v in enumerate(arr):
                if v == 0:
                    raise ZeroInitialValue(side.lower(), slot - params.k)


def rationals(values: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)
