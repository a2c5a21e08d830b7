"""Direct iteration of the system, exactly or in binary64."""

from __future__ import annotations

import csv
import enum
import io
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, TextIO, Union

from .core import X, Y, DenominatorZero, InitialData, SystemParams, format_rational, parse_rational, validate

Number = Union[Fraction, float]

DEFAULT_FLOAT_EPS = 1e-300


class SimMode(enum.Enum):
    EXACT = "exact"
    FLOAT64 = "float64"

    @classmethod
    def parse(cls, text: str) -> "SimMode":
        t = text.strip().lower()
        if t in ("float", "float64"):
            return cls.FLOAT64
        if t == "exact":
            return cls.EXACT
        raise ValueError(f"unknown mode {text!r} (expected exact or float64)")


@dataclass(frozen=True)
class TrajectoryPoint:
    n: int
    x: Number
    y: Number


@dataclass(frozen=True)
class Breakdown:
    n: int
    side: str


@dataclass(frozen=True)
class RunStats:
    max_x: float
    min_x: float
    max_y: float
    min_y: float


@dataclass(frozen=True)
class Trajectory:
    points: tuple[TrajectoryPoint, ...]
    breakdown: Optional[Breakdown] = None
    stats: Optional[RunStats] = None
    k: int = field(default=1)

    def __len__(self):
        return len(self.points)

    @property
    def first_index(self) -> int:
        return self.points[0].n

    @property
    def last_index(self) -> int:
        return self.points[-1].n

    def point(self, n: int) -> TrajectoryPoint:
        pt = self.points[n - self.first_index]
        assert pt.n == n
        return pt

    def x(self, n: int) -> Number:
        return self.point(n).x

    def y(self, n: int) -> Number:
        return self.point(n).y

    def xs(self) -> list[Number]:
        return [pt.x for pt in self.points]

    def ys(self) -> list[Number]:
        return [pt.y for pt in self.points]

    def subsequence(self, side: str, start: int, stride: int) -> list[Number]:
        """Values at ``start, start + stride, ...`` that were computed."""
        out = []
        n = start
        while n <= self.last_index:
            pt = self.point(n)
            out.append(pt.x if side == X else pt.y)
            n += stride
        return out


def _pow(v: Number, p: int) -> Number:
    try:
        return v**p
    except OverflowError:
        return math.copysign(math.inf, v) if p % 2 else math.inf


def step(params: SystemParams, window_x: Sequence[Number], window_y: Sequence[Number],
         n: Optional[int] = None, eps: float = 0.0) -> tuple[Number, Number]:
    """One step from windows ``(x_{n-k}, ..., x_n)`` and ``(y_{n-k}, ..., y_n)``.

    Returns ``(x_{n+1}, y_{n+1})``.  Raises :class:`DenominatorZero` (with
    ``at = n + 1`` when ``n`` is given) if either denominator vanishes, or
    has magnitude below ``eps`` in float mode.
    """
    p = params.p
    x_old, x_new, x_lag = window_x[0], window_x[-1], window_x[1]
    y_old, y_new, y_lag = window_y[0], window_y[-1], window_y[1]
    at = None if n is None else n + 1
    if isinstance(x_new, float):
        a, b, alpha, beta = (float(params.a), float(params.b), float(params.alpha), float(params.beta))
    else:
        a, b, alpha, beta = params.a, params.b, params.alpha, params.beta
    den_x = a * _pow(y_old, p) + b * y_new
    if den_x == 0 or abs(den_x) < eps:
        raise DenominatorZero(X, at)
    den_y = alpha * _pow(x_old, p) + beta * x_new
    if den_y == 0 or abs(den_y) < eps:
        raise DenominatorZero(Y, at)
    return _pow(x_lag, p) * y_new / den_x, _pow(y_lag, p) * x_new / den_y


def simulate(params: SystemParams, init: InitialData, N: int,
             mode: SimMode = SimMode.EXACT, eps: float = DEFAULT_FLOAT_EPS) -> Trajectory:
    """Iterate from ``n = -k`` up to ``N`` or until a denominator vanishes.

    A breakdown is recorded on the trajectory rather than raised; points
    stop just before the breakdown index.
    """
    validate(params, init)
    k = params.k
    if mode is SimMode.FLOAT64:
        xs0 = [float(v) for v in init.x]
        ys0 = [float(v) for v in init.y]
    else:
        xs0, ys0 = list(init.x), list(init.y)
        eps = 0.0
    points = [TrajectoryPoint(i - k, xs0[i], ys0[i]) for i in range(k + 1)]
    wx = deque(xs0, maxlen=k + 1)
    wy = deque(ys0, maxlen=k + 1)
    breakdown = None
    for n in range(N):
        try:
            xn, yn = step(params, wx, wy, n, eps)
        except DenominatorZero as exc:
            breakdown = Breakdown(exc.at, exc.side)
            break
        wx.append(xn)
        wy.append(yn)
        points.append(TrajectoryPoint(n + 1, xn, yn))
    stats = None
    if mode is SimMode.FLOAT64:
        xv = [pt.x for pt in points]
        yv = [pt.y for pt in points]
        stats = RunStats(max(xv), min(xv), max(yv), min(yv))
    return Trajectory(tuple(points), breakdown, stats, k)


def _fmt(v: Number) -> str:
    return repr(v) if isinstance(v, float) else format_rational(v)


def write_csv(traj: Trajectory, fh: TextIO) -> None:
    """``n,x,y`` rows; exact values as ``num/den``, floats round-trip."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "x", "y"])
    for pt in traj.points:
        w.writerow([pt.n, _fmt(pt.x), _fmt(pt.y)])
    if traj.breakdown is not None:
        fh.write(f"# breakdown side={traj.breakdown.side} n={traj.breakdown.n}\n")


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    write_csv(traj, buf)
    return buf.getvalue()


def _parse_value(text: str) -> Number:
    if "." in text or "e" in text.lower() or text in ("inf", "-inf", "nan"):
        return float(text)
    return parse_rational(text)


def read_csv(fh: TextIO, k: int = 1) -> Trajectory:
    points = []
    breakdown = None
    header_seen = False
    for line in fh:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = dict(tok.split("=", 1) for tok in line[1:].split()[1:])
            breakdown = Breakdown(int(fields["n"]), fields["side"])
            continue
        if not header_seen:
            header_seen = True
            continue
        n, x, y = line.split(",")
        points.append(TrajectoryPoint(int(n), _parse_value(x), _parse_value(y)))
    return Trajectory(tuple(points), breakdown, None, k)
