"""Representative trajectories for each dynamical regime, as CSV + SVG.

Initial values are random in (0, 1) (seeded, multiples of 2^-16); each
suite then adjusts them only as much as its hypotheses require, e.g. the
periodic suite copies x_{-k} into x_0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from .config import random_init
from .core import InitialData, SystemParams
from .simulator import SimMode, Trajectory, simulate, trajectory_csv

F = Fraction


def _match_anchors(init: InitialData) -> InitialData:
    return InitialData(init.x[:-1] + init.x[:1], init.y[:-1] + init.y[:1])


def _match_x_anchor(init: InitialData) -> InitialData:
    return InitialData(init.x[:-1] + init.x[:1], init.y)


def _h2_ok(params: SystemParams, init: InitialData) -> bool:
    k = params.k
    return (params.a * init.y_at(-k) >= init.y_at(0)
            and params.alpha * init.x_at(-k) >= init.x_at(0))


def _not_frozen(params: SystemParams, init: InitialData) -> bool:
    k = params.k
    return (init.x_at(-k) != init.x_at(0) and init.y_at(-k) != init.y_at(0)
            and params.a * init.y_at(-k) != (1 - params.b) * init.y_at(0)
            and params.alpha * init.x_at(-k) != (1 - params.beta) * init.x_at(0))


@dataclass(frozen=True)
class Suite:
    name: str
    params: SystemParams
    steps: int
    mode: SimMode
    description: str
    adjust: Optional[Callable[[InitialData], InitialData]] = None
    accept: Optional[Callable[[SystemParams, InitialData], bool]] = None

    def initial_data(self, seed: int) -> InitialData:
        # Resampling uses derived seeds so the draw stays a pure function of `seed`.
        for attempt in range(1000):
            init = random_init(self.params.k, seed * 1000 + attempt if attempt else seed)
            if self.adjust is not None:
                init = self.adjust(init)
            if self.accept is None or self.accept(self.params, init):
                return init
        raise RuntimeError(f"{self.name}: no admissible initial data found")

    def run(self, seed: int) -> Trajectory:
        return simulate(self.params, self.initial_data(seed), self.steps, self.mode)


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("thm3-h1", SystemParams(F(1, 2), F(3, 2), F(1, 3), F(1), 1, 3), 45, SimMode.EXACT,
              "min(b, beta) >= 1: every residue class mod k is nonincreasing"),
        Suite("thm3-h2", SystemParams(F(2), F(1, 2), F(3, 2), F(1, 4), 1, 2), 40, SimMode.EXACT,
              "min(a, alpha) >= 1 with a*y_{-k} >= y_0, alpha*x_{-k} >= x_0", accept=_h2_ok),
        Suite("thm4", SystemParams(F(1, 3), F(2, 3), F(1, 4), F(3, 4), 1, 3), 30, SimMode.EXACT,
              "a+b = alpha+beta = 1 and matching anchors: period k", adjust=_match_anchors),
        Suite("thm5-zero", SystemParams(F(1, 2), F(1), F(1, 2), F(1), 1, 2), 200, SimMode.FLOAT64,
              "a*alpha = 1/4 < 1, A = B = 2 > 1: both components tend to 0"),
        Suite("thm5-infty", SystemParams(F(1, 2), F(1, 4), F(1, 2), F(1, 4), 1, 2), 200, SimMode.FLOAT64,
              "a*alpha = 1/4 < 1, A = B = 1/2 < 1: both components diverge"),
        Suite("thm6-convergent", SystemParams(F(1, 2), F(1, 2), F(1, 2), F(1, 2), 1, 2), 100, SimMode.FLOAT64,
              "A = B = 1, generic anchors: even and odd subsequences converge", accept=_not_frozen),
        Suite("thm6-frozen", SystemParams(F(1, 2), F(1, 2), F(1, 2), F(1, 2), 1, 2), 60, SimMode.EXACT,
              "A = B = 1, x_{-k} = x_0: even-index x and odd-index y are constant",
              adjust=_match_x_anchor),
    ]
}


def _as_float(v) -> float:
    try:
        return float(v)
    except OverflowError:
        return math.inf if v > 0 else -math.inf


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def line_plot_svg(traj: Trajectory, title: str = "", width: int = 640, height: int = 400) -> str:
    """Both components against n; x marked with squares, y with triangles.

    Uses a log10 vertical axis when every value is positive and the range
    spans more than three decades.
    """
    ns = [pt.n for pt in traj.points]
    xs = [_as_float(pt.x) for pt in traj.points]
    ys = [_as_float(pt.y) for pt in traj.points]
    values = [v for v in xs + ys if math.isfinite(v)]
    use_log = bool(values) and min(values) > 0 and max(values) / min(values) > 1e3
    tf = (lambda v: math.log10(v)) if use_log else (lambda v: v)
    tv = [tf(v) for v in values] or [0.0]
    lo, hi = min(tv), max(tv)
    if hi == lo:
        lo, hi = lo - 1, hi + 1
    left, right, top, bottom = 60, 20, 30, 40
    n_lo, n_hi = ns[0], max(ns[-1], ns[0] + 1)

    def sx(n):
        return left + (n - n_lo) / (n_hi - n_lo) * (width - left - right)

    def sy(v):
        return top + (hi - tf(v)) / (hi - lo) * (height - top - bottom)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="18" text-anchor="middle" font-size="13" '
        f'font-family="sans-serif">{title}</text>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle" font-size="12" '
        f'font-family="sans-serif">n</text>',
        f'<text x="6" y="{top + 4}" font-size="11" font-family="sans-serif">'
        f'{("1e%.1f" % hi) if use_log else ("%.3g" % hi)}</text>',
        f'<text x="6" y="{height - bottom}" font-size="11" font-family="sans-serif">'
        f'{("1e%.1f" % lo) if use_log else ("%.3g" % lo)}</text>',
    ]
    for series, colour, marker in ((xs, "#1f4e9c", "square"), (ys, "#b22222", "triangle")):
        pts = [(sx(n), sy(v)) for n, v in zip(ns, series) if math.isfinite(v) and (v > 0 or not use_log)]
        if not pts:
            continue
        path = " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)
        parts.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1" points="{path}"/>')
        for px, py in pts:
            if marker == "square":
                parts.append(f'<rect x="{_fmt(px - 2.5)}" y="{_fmt(py - 2.5)}" width="5" height="5" fill="{colour}"/>')
            else:
                parts.append(
                    f'<polygon points="{_fmt(px)},{_fmt(py - 3)} {_fmt(px - 3)},{_fmt(py + 2.5)} '
                    f'{_fmt(px + 3)},{_fmt(py + 2.5)}" fill="{colour}"/>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def suite_title(suite: Suite) -> str:
    p = suite.params
    return f"{suite.name}: k={p.k}, a={p.a}, b={p.b}, alpha={p.alpha}, beta={p.beta}"


def write_suite(name: str, seed: int, outdir: Path) -> tuple[Path, Path]:
    suite = SUITES[name]
    traj = suite.run(seed)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"{name}.csv"
    svg_path = outdir / f"{name}.svg"
    csv_path.write_text(trajectory_csv(traj))
    svg_path.write_text(line_plot_svg(traj, suite_title(suite)))
    return csv_path, svg_path
