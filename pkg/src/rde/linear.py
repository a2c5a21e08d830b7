"""Linearized u/v sequences.

The substitution ``u_n = x_{n-k}^p / x_n`` and ``v_n = y_{n-k}^p / y_n``
turns the system into the coupled affine recurrence

    u_{n+1} = a*v_n + b,    v_{n+1} = alpha*u_n + beta,

whose even and odd subsequences each satisfy a first-order affine
recurrence with ratio ``a*alpha``.  This module holds both the direct
iteration of that recurrence and its closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import InitialData, SystemParams, ZeroAnchor


@dataclass(frozen=True)
class UVState:
    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]

    def satisfies_recurrence(self, params: SystemParams) -> bool:
        return all(
            self.u[n + 1] == params.a * self.v[n] + params.b
            and self.v[n + 1] == params.alpha * self.u[n] + params.beta
            for n in range(len(self.u) - 1)
        )


def geometric_sum(q: Fraction, n: int) -> Fraction:
    """Return ``1 + q + ... + q^(n-1)`` (``n`` when ``q == 1``, 0 when ``n == 0``)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = Fraction(q)
    if q == 1:
        return Fraction(n)
    return (q**n - 1) / (q - 1)


def gap2_linear_solve(a, b, y0, y1, n: int, i: int) -> Fraction:
    """Term ``y_{2n+i}`` of ``y_{m+2} = a*y_m + b`` started from ``y0, y1``."""
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    a, b = Fraction(a), Fraction(b)
    start = Fraction(y0 if i == 0 else y1)
    if a == 1:
        return start + b * n
    return a**n * start + (a**n - 1) / (a - 1) * b


def _anchors(init: InitialData) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    k = init.k
    x_old, x0 = init.x_at(-k), init.x_at(0)
    y_old, y0 = init.y_at(-k), init.y_at(0)
    if x0 == 0:
        raise ZeroAnchor("x")
    if y0 == 0:
        raise ZeroAnchor("y")
    return x_old, x0, y_old, y0


def uv_initial(params: SystemParams, init: InitialData) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Return ``(u0, u1, v0, v1)`` computed from the anchors x_{-k}, x_0, y_{-k}, y_0."""
    x_old, x0, y_old, y0 = _anchors(init)
    p = params.p
    u0 = x_old**p / x0
    v0 = y_old**p / y0
    u1 = (params.a * y_old**p + params.b * y0) / y0
    v1 = (params.alpha * x_old**p + params.beta * x0) / x0
    return u0, u1, v0, v1


def uv_iterate(params: SystemParams, init: InitialData, N: int) -> UVState:
    """Iterate the coupled recurrence to obtain u_0..u_N and v_0..v_N."""
    x_old, x0, y_old, y0 = _anchors(init)
    u = [x_old**params.p / x0]
    v = [y_old**params.p / y0]
    for _ in range(N):
        u_next = params.a * v[-1] + params.b
        v_next = params.alpha * u[-1] + params.beta
        u.append(u_next)
        v.append(v_next)
    return UVState(tuple(u), tuple(v))


def uv_closed(params: SystemParams, init: InitialData, n: int) -> tuple[Fraction, Fraction]:
    """Closed-form ``(u_n, v_n)``.

    With ``n = 2q + i`` each parity class is an affine recurrence with ratio
    ``a*alpha``, so ``u_n = (a alpha)^q u_i + S_q (a beta + b)`` where ``S_q``
    is the geometric sum, and likewise ``v_n`` with shift ``alpha b + beta``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    u0, u1, v0, v1 = uv_initial(params, init)
    q, i = divmod(n, 2)
    ui, vi = (u0, v0) if i == 0 else (u1, v1)
    ratio = params.discriminant
    if ratio == 1:
        return ui + params.x_shift * q, vi + params.y_shift * q
    growth = ratio**q
    s = geometric_sum(ratio, q)
    return growth * ui + s * params.x_shift, growth * vi + s * params.y_shift


def uv_explicit(params: SystemParams, init: InitialData, n: int) -> tuple[Fraction, Fraction]:
    """``(u_n, v_n)`` written directly in the initial values.

    Each value is a single quotient whose denominator is x_0 or y_0, e.g.
    ``u_{2q+1} = ((a alpha)^q (a y_{-k}^p + b y_0) + S_q (a beta + b) y_0) / y_0``.
    Kept separate from :func:`uv_closed` so the two can check each other.
    """
    x_old, x0, y_old, y0 = _anchors(init)
    p = params.p
    a, b, alpha, beta = params.a, params.b, params.alpha, params.beta
    q, i = divmod(n, 2)
    ratio = a * alpha
    if ratio == 1:
        if i == 0:
            u = (x_old**p + (a * beta + b) * q * x0) / x0
            v = (y_old**p + (alpha * b + beta) * q * y0) / y0
        else:
            u = (a * y_old**p + b * y0 + (a * beta + b) * q * y0) / y0
            v = (alpha * x_old**p + beta * x0 + (alpha * b + beta) * q * x0) / x0
        return u, v
    power = ratio**q
    coeff = (power - 1) / (ratio - 1)
    if i == 0:
        u = (power * x_old**p + coeff * (a * beta + b) * x0) / x0
        v = (power * y_old**p + coeff * (alpha * b + beta) * y0) / y0
    else:
        u = (power * (a * y_old**p + b * y0) + coeff * (a * beta + b) * y0) / y0
        v = (power * (alpha * x_old**p + beta * x0) + coeff * (alpha * b + beta) * x0) / x0
    return u, v
