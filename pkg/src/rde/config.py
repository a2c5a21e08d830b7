"""Run configuration: flat ``key = value`` files and random initial data.

Example file::

    # period-2 instance
    a = 1/2
    b = 1/2
    alpha = 1/3
    beta = 2/3
    p = 1
    k = 2
    x[-2] = 2
    x[-1] = 5
    x[0] = 2
    y = 3, 7, 3
    steps = 100
    mode = exact

``x``/``y`` may be given element-wise (``x[-2]``) or as a comma list ordered
from index -k to 0.  With no initial values but a ``seed``, initial values
are drawn from (0, 1) as multiples of 2^-16.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .core import InitialData, SystemParams, format_rational, parse_rational
from .simulator import SimMode

RANDOM_DENOMINATOR = 2**16
PARAM_KEYS = ("a", "b", "alpha", "beta", "p", "k")

_INDEXED = re.compile(r"^([xy])\[\s*(-?\d+)\s*\]$")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: SystemParams
    init: InitialData
    steps: int = 20
    mode: SimMode = SimMode.EXACT
    seed: Optional[int] = None
    out: Optional[str] = None


def random_init(k: int, seed: int) -> InitialData:
    """2(k+1) values ``j / 2^16`` with ``j`` uniform in ``1..2^16-1``."""
    rng = random.Random(seed)
    draw = lambda: Fraction(rng.randint(1, RANDOM_DENOMINATOR - 1), RANDOM_DENOMINATOR)
    xs = tuple(draw() for _ in range(k + 1))
    ys = tuple(draw() for _ in range(k + 1))
    return InitialData(xs, ys)


def parse_text(text: str) -> dict[str, str]:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        raw[key] = value
    return raw


def _values(raw: Mapping[str, str], name: str, k: int) -> Optional[tuple[Fraction, ...]]:
    if raw.get(name):
        items = [s for s in (t.strip() for t in raw[name].split(",")) if s]
        if len(items) != k + 1:
            raise ConfigError(f"{name} needs k+1 = {k + 1} values, got {len(items)}")
        return tuple(_rational(name, s) for s in items)
    indexed = {}
    for key, value in raw.items():
        m = _INDEXED.match(key)
        if m and m.group(1) == name:
            indexed[int(m.group(2))] = _rational(key, value)
    if not indexed:
        return None
    try:
        return tuple(indexed[i] for i in range(-k, 1))
    except KeyError as exc:
        raise ConfigError(f"missing key: {name}[{exc.args[0]}]") from None


def _rational(key: str, text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise ConfigError(f"{key}: not a rational: {text!r}") from None


def _int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: not an integer: {text!r}") from None


def build(raw: Mapping[str, str]) -> RunConfig:
    """Turn raw string values into a validated :class:`RunConfig`."""
    for key in PARAM_KEYS:
        if key not in raw or raw[key] == "":
            raise ConfigError(f"missing key: {key}")
    try:
        params = SystemParams(
            _rational("a", raw["a"]), _rational("b", raw["b"]),
            _rational("alpha", raw["alpha"]), _rational("beta", raw["beta"]),
            p=_int("p", raw["p"]), k=_int("k", raw["k"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    k = params.k
    seed = _int("seed", raw["seed"]) if raw.get("seed") else None
    xs, ys = _values(raw, "x", k), _values(raw, "y", k)
    if xs is None or ys is None:
        if seed is None:
            raise ConfigError(f"missing key: {'x' if xs is None else 'y'} (or give a seed)")
        drawn = random_init(k, seed)
        xs = drawn.x if xs is None else xs
        ys = drawn.y if ys is None else ys
    try:
        mode = SimMode.parse(raw.get("mode") or "exact")
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    steps = _int("steps", raw["steps"]) if raw.get("steps") else 20
    if steps < 0:
        raise ConfigError("steps must be nonnegative")
    return RunConfig(params, InitialData(xs, ys), steps, mode, seed, raw.get("out") or None)


def parse_config(text: str) -> RunConfig:
    return build(parse_text(text))


def dump_config(cfg: RunConfig) -> str:
    """Inverse of :func:`parse_config` (initial values written out explicitly)."""
    p = cfg.params
    lines = [
        f"a = {p.a}", f"b = {p.b}", f"alpha = {p.alpha}", f"beta = {p.beta}",
        f"p = {p.p}", f"k = {p.k}",
    ]
    for name, arr in (("x", cfg.init.x), ("y", cfg.init.y)):
        lines += [f"{name}[{i - p.k}] = {format_rational(v)}" for i, v in enumerate(arr)]
    lines += [f"steps = {cfg.steps}", f"mode = {cfg.mode.value}"]
    if cfg.seed is not None:
        lines.append(f"seed = {cfg.seed}")
    if cfg.out is not None:
        lines.append(f"out = {cfg.out}")
    return "\n".join(lines) + "\n"
