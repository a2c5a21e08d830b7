"""Closed-form solutions built from the u/v sequences.

Every term is ``x_n = x_{r-k}^{E} / prod_j u_j^{e_j}`` for some initial
value, exponent and list of u factors (v for the y side).  A
:class:`ProductPlan` records that bookkeeping.  :func:`general_plan` is the
uniform product over ``n = k*m + r``; :func:`theorem2_plan` is the parity
split (even k, odd k >= 3, k = 1), written out case by case and evaluated
against the explicit u/v formulas as an independent cross-check.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .core import (
    X,
    Y,
    BreakdownAtIndex,
    ExponentCapExceeded,
    InitialData,
    SystemParams,
    check_closed_form_domain,
    range_product,
    to_rational,
)
from .linear import uv_closed, uv_explicit

log = logging.getLogger(__name__)

DEFAULT_EXP_CAP = 2**20

_noted: set[str] = set()


def _note_once(key: str, message: str) -> None:
    if key not in _noted:
        _noted.add(key)
        log.info(message)


@dataclass(frozen=True)
class ClosedFormQuery:
    target: str
    n: int

    def __post_init__(self):
        if self.target not in (X, Y):
            raise ValueError(f"target must be {X!r} or {Y!r}")


@dataclass(frozen=True)
class ProductPlan:
    """``init[init_index]**numerator_exponent / prod(f[j]**e for j, e in factors)``."""

    init_index: int
    numerator_exponent: int
    factors: tuple[tuple[int, int], ...]


def exponent_cap() -> int:
    raw = os.environ.get("RDE_EXP_CAP")
    if raw is None or not raw.strip():
        return DEFAULT_EXP_CAP
    return int(raw)


def check_exponent(p: int, height: int, cap: Optional[int] = None) -> None:
    """Refuse towers with ``p**height > cap`` (only relevant for ``p >= 2``)."""
    if p < 2:
        return
    cap = exponent_cap() if cap is None else cap
    e = 1
    for _ in range(height):
        e *= p
        if e > cap:
            raise ExponentCapExceeded(
                f"p^{height} exceeds the exponent cap {cap}; raise RDE_EXP_CAP to allow it"
            )


def general_plan(k: int, p: int, n: int) -> ProductPlan:
    """Plan for ``x_{k m + r} = x_{r-k}^{p^{m+1}} / prod_{i=0}^{m} u_{k i + r}^{p^{m-i}}``."""
    if n < 0:
        raise ValueError("plans are only defined for n >= 0")
    m, r = divmod(n, k)
    factors = tuple((k * i + r, p ** (m - i)) for i in range(m + 1))
    return ProductPlan(r - k, p ** (m + 1), factors)


def _odd_k_plan(k: int, p: int, n: int, literal: bool) -> ProductPlan:
    # k = 2l+1, l >= 1; n = 2k*N + s with s in 0..2k-1, four families.
    l = (k - 1) // 2
    N, s = divmod(n, 2 * k)
    if s % 2 == 0 and s <= 2 * l:
        r = s // 2
        factors = [(2 * (k * i + r), p ** (2 * (N - i))) for i in range(N + 1)]
        factors += [(2 * (k * i + l + r) + 1, p ** (2 * (N - i) - 1)) for i in range(N)]
        return ProductPlan(2 * (r - l) - 1, p ** (2 * N + 1), tuple(factors))
    if s % 2 == 1 and s <= 2 * l - 1:
        r = (s - 1) // 2
        factors = [(2 * (k * i + r) + 1, p ** (2 * (N - i))) for i in range(N + 1)]
        factors += [(2 * (k * i + l + r + 1), p ** (2 * (N - i) - 1)) for i in range(N)]
        # x_{r-2l-1} would be the wrong residue; the right one is 2r+1.
        init_index = r - 2 * l - 1 if literal else 2 * (r - l)
        return ProductPlan(init_index, p ** (2 * N + 1), tuple(factors))
    if s % 2 == 1:
        r = (s - 2 * l - 1) // 2
        factors = []
        for i in range(N + 1):
            factors.append((2 * (k * i + r), p ** (2 * (N - i) + 1)))
            factors.append((2 * (k * i + l + r) + 1, p ** (2 * (N - i))))
        return ProductPlan(2 * (r - l) - 1, p ** (2 * N + 2), tuple(factors))
    r = (s - 2 * l - 2) // 2
    factors = []
    for i in range(N + 1):
        factors.append((2 * (k * i + r) + 1, p ** (2 * (N - i) + 1)))
        factors.append((2 * (k * i + l + r + 1), p ** (2 * (N - i))))
    return ProductPlan(2 * (r - l), p ** (2 * N + 2), tuple(factors))


def theorem2_plan(k: int, p: int, n: int, side: str = X, literal: bool = False) -> ProductPlan:
    """Plan from the parity-split formulas.

    ``literal=True`` swaps in two known-wrong variants, kept as negative
    controls: the y numerator exponent ``p^m`` (rather than ``p^{m+1}``) for
    even k, and the numerator index ``r - 2l - 1`` (rather than ``2(r - l)``)
    in the second odd-k family.  Both disagree with direct iteration.
    """
    if n < 0:
        raise ValueError("plans are only defined for n >= 0")
    if k % 2 == 0:
        l = k // 2
        m, s = divmod(n, k)
        r, j = divmod(s, 2)
        factors = tuple((2 * (l * i + r) + j, p ** (m - i)) for i in range(m + 1))
        exponent = p**m if (literal and side == Y) else p ** (m + 1)
        return ProductPlan(2 * (r - l) + j, exponent, factors)
    if k == 1:
        N, s = divmod(n, 2)
        if s == 0:
            factors = [(2 * i, p ** (2 * (N - i))) for i in range(N + 1)]
            factors += [(2 * i + 1, p ** (2 * (N - i) - 1)) for i in range(N)]
            return ProductPlan(-1, p ** (2 * N + 1), tuple(factors))
        factors = []
        for i in range(N + 1):
            factors.append((2 * i, p ** (2 * (N - i) + 1)))
            factors.append((2 * i + 1, p ** (2 * (N - i))))
        return ProductPlan(-1, p ** (2 * N + 2), tuple(factors))
    return _odd_k_plan(k, p, n, literal)


def _evaluate(plan: ProductPlan, start: Fraction, factor: Callable[[int], Fraction], side: str) -> Fraction:
    values = [factor(j) for j, _ in plan.factors]
    zeros = [j for (j, _), v in zip(plan.factors, values) if v == 0]
    if zeros:
        raise BreakdownAtIndex(min(zeros), side)
    den = range_product(0, len(values) - 1, lambda t: values[t] ** plan.factors[t][1])
    return start**plan.numerator_exponent / den


class _UVTable:
    """Memoized ``index -> (u, v)`` lookup over one of the closed forms."""

    def __init__(self, params: SystemParams, init: InitialData, fn=uv_closed):
        self.params = params
        self.init = init
        self.fn = fn
        self._cache: dict[int, tuple[Fraction, Fraction]] = {}

    def __call__(self, j: int) -> tuple[Fraction, Fraction]:
        if j not in self._cache:
            self._cache[j] = self.fn(self.params, self.init, j)
        return self._cache[j]

    def side(self, side: str) -> Callable[[int], Fraction]:
        pos = 0 if side == X else 1
        return lambda j: self(j)[pos]


def _tower_height(params: SystemParams, n: int) -> int:
    return n // params.k + 1


def _general(params: SystemParams, init: InitialData, side: str, n: int, table: _UVTable) -> Fraction:
    if n < 0:
        return init.at(side, n)
    check_exponent(params.p, _tower_height(params, n))
    plan = general_plan(params.k, params.p, n)
    return _evaluate(plan, init.at(side, plan.init_index), table.side(side), side)


def _theorem2(params, init, side, n, table, literal=False) -> Fraction:
    if n < 0:
        return init.at(side, n)
    check_exponent(params.p, _tower_height(params, n))
    plan = theorem2_plan(params.k, params.p, n, side, literal)
    if not literal:
        if params.k % 2 == 0 and side == Y:
            _note_once("2a", "even k: y numerator exponent is p^(m+1), not p^m")
        elif params.k % 2 == 1 and params.k > 1:
            _note_once("2b", "odd k: second-family numerator index is 2(r-l), not r-2l-1")
    return _evaluate(plan, init.at(side, plan.init_index), table.side(side), side)


def closed_form_general(params: SystemParams, init: InitialData, q: ClosedFormQuery) -> Fraction:
    """Exact ``x_n`` or ``y_n`` from the uniform product formula.

    Raises :class:`BreakdownAtIndex` when a required u/v factor is zero and
    :class:`ExponentCapExceeded` when ``p^{m+1}`` is beyond the cap.
    """
    check_closed_form_domain(params, init)
    return _general(params, init, q.target, q.n, _UVTable(params, init))


def closed_form_theorem2(params: SystemParams, init: InitialData, q: ClosedFormQuery, literal: bool = False) -> Fraction:
    """Exact ``x_n`` or ``y_n`` from the parity-split formulas.

    u/v values come from :func:`rde.linear.uv_explicit`, not from
    :func:`rde.linear.uv_closed`, so agreement with
    :func:`closed_form_general` checks both layers.
    """
    check_closed_form_domain(params, init)
    return _theorem2(params, init, q.target, q.n, _UVTable(params, init, uv_explicit), literal)


def closed_form_series(params: SystemParams, init: InitialData, N: int, evaluator: str = "general"):
    """``[(n, x_n, y_n)]`` for ``n = -k..N`` from one evaluator.

    Stops early (without raising) at the first index whose value hits a
    zero factor; the returned list then ends just before it.
    """
    check_closed_form_domain(params, init)
    if evaluator == "general":
        table = _UVTable(params, init)
        fn = _general
    elif evaluator == "theorem2":
        table = _UVTable(params, init, uv_explicit)
        fn = _theorem2
    else:
        raise ValueError(f"unknown evaluator {evaluator!r}")
    out = []
    for n in range(-params.k, N + 1):
        try:
            out.append((n, fn(params, init, X, n, table), fn(params, init, Y, n, table)))
        except BreakdownAtIndex:
            break
    return out


def first_zero_factor(params: SystemParams, init: InitialData, upto: int) -> Optional[tuple[int, str]]:
    """First ``m`` in ``1..upto`` with ``u_m == 0`` (side X) or ``v_m == 0`` (side Y)."""
    check_closed_form_domain(params, init)
    for m in range(1, upto + 1):
        u, v = uv_closed(params, init, m)
        if u == 0:
            return m, X
        if v == 0:
            return m, Y
    return None


def reduce_to_single(params: SystemParams, x_init) -> tuple[SystemParams, InitialData]:
    """Symmetric instance (alpha = a, beta = b, y = x) of the system.

    Both components then follow the single equation
    ``x_{n+1} = x_{n-k+1}^p x_n / (a x_{n-k}^p + b x_n)``.
    """
    xs = tuple(to_rational(v) for v in x_init)
    sym = SystemParams(params.a, params.b, params.a, params.b, params.p, params.k)
    return sym, InitialData(xs, xs)
