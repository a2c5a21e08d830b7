"""Boundedness, period-k, and limit behaviour for the p = 1 system.

Everything here is parameter/initial-data arithmetic in exact rationals.
The helpers at the bottom (:func:`observed_limits`, :func:`cauchy_tail`)
are the numerical checks the verdicts are tested against.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import X, Y, InitialData, InsufficientData, SystemParams, TheoremInapplicable, validate
from .simulator import SimMode, Trajectory, simulate


class Hypothesis(enum.Enum):
    H1 = "H1"
    H2 = "H2"
    NONE = "NONE"


class Verdict(enum.Enum):
    ZERO = "ZERO"
    INFINITY = "INFINITY"
    BOUNDARY = "BOUNDARY"
    UNSUPPORTED = "UNSUPPORTED"


class BoundaryCase(enum.Enum):
    CONVERGENT_EVEN_SUBSEQ = "CONVERGENT_EVEN_SUBSEQ"
    FROZEN_EVEN_SUBSEQ = "FROZEN_EVEN_SUBSEQ"
    CONVERGENT_ODD_SUBSEQ = "CONVERGENT_ODD_SUBSEQ"
    FROZEN_ODD_SUBSEQ = "FROZEN_ODD_SUBSEQ"

    @property
    def frozen(self) -> bool:
        return self.name.startswith("FROZEN")

    @property
    def parity(self) -> int:
        return 0 if "EVEN" in self.name else 1


@dataclass(frozen=True)
class BoundednessCertificate:
    hypothesis: Hypothesis
    bound_x: Optional[Fraction] = None
    bound_y: Optional[Fraction] = None


@dataclass(frozen=True)
class PeriodicityVerdict:
    holds: bool
    failed: tuple[str, ...] = ()

    def __bool__(self):
        return self.holds

    @property
    def reason(self) -> str:
        return "; ".join(self.failed) if self.failed else "all clauses hold"


@dataclass(frozen=True)
class AsymptoticClass:
    discriminant: Fraction
    A: Optional[Fraction]
    B: Optional[Fraction]
    verdict_x: Verdict
    verdict_y: Verdict
    note: str = ""


@dataclass(frozen=True)
class BoundaryReport:
    """One subsequence family on one side.

    ``values[r]`` is the constant value of the subsequence with offset
    ``2r + parity`` for FROZEN cases; CONVERGENT cases carry no values.
    """

    side: str
    case: BoundaryCase
    witness: str
    values: Optional[tuple[Fraction, ...]] = None


def _require_p1(params: SystemParams, what: str) -> None:
    if params.p != 1:
        raise TheoremInapplicable(f"{what} needs p = 1 (got p = {params.p})")


def _require_positive_setting(params: SystemParams, init: InitialData, what: str) -> None:
    _require_p1(params, what)
    if not validate(params, init).positivity:
        raise TheoremInapplicable(f"{what} needs nonnegative initial values with positive anchors")


def boundedness_certificate(params: SystemParams, init: InitialData) -> BoundednessCertificate:
    """H.1 (``min(b, beta) >= 1``) first, then H.2; NONE if neither applies.

    Both hypotheses are only used with nonnegative coefficients, since the
    comparison arguments drop the other denominator term.
    """
    _require_positive_setting(params, init, "boundedness certificate")
    a, b, alpha, beta, k = params.a, params.b, params.alpha, params.beta, params.k
    if min(a, b, alpha, beta) < 0:
        return BoundednessCertificate(Hypothesis.NONE)
    recent_x = [init.x_at(-i) for i in range(k)]
    recent_y = [init.y_at(-i) for i in range(k)]
    if min(b, beta) >= 1:
        return BoundednessCertificate(
            Hypothesis.H1, max(v / b for v in recent_x), max(v / beta for v in recent_y)
        )
    if (min(a, alpha) >= 1 and a * init.y_at(-k) >= init.y_at(0)
            and alpha * init.x_at(-k) >= init.x_at(0)):
        return BoundednessCertificate(Hypothesis.H2, max(recent_x), max(recent_y))
    return BoundednessCertificate(Hypothesis.NONE)


def periodicity_condition(params: SystemParams, init: InitialData) -> PeriodicityVerdict:
    """Whether the orbit satisfies ``(x_n, y_n) = (x_{n-k}, y_{n-k})`` for all n >= 0."""
    _require_p1(params, "period-k condition")
    k = params.k
    if init.x_at(1 - k) == 0 or init.y_at(1 - k) == 0:
        raise TheoremInapplicable("period-k condition needs x_{1-k} != 0 and y_{1-k} != 0")
    failed = []
    if init.x_at(0) != init.x_at(-k):
        failed.append("x_0 != x_{-k}")
    if init.y_at(0) != init.y_at(-k):
        failed.append("y_0 != y_{-k}")
    if params.a + params.b != 1:
        failed.append("a+b != 1")
    if params.alpha + params.beta != 1:
        failed.append("alpha+beta != 1")
    return PeriodicityVerdict(not failed, tuple(failed))


def detect_period(traj: Trajectory, k: int, horizon: int) -> bool:
    """Exact check of ``x_n == x_{n-k}`` and ``y_n == y_{n-k}`` for ``0 <= n <= horizon``."""
    if traj.last_index < horizon:
        raise InsufficientData(
            f"trajectory ends at n={traj.last_index}, need n={horizon}"
            + (f" (breakdown at {traj.breakdown.n})" if traj.breakdown else "")
        )
    for n in range(horizon + 1):
        now, then = traj.point(n), traj.point(n - k)
        if now.x != then.x or now.y != then.y:
            return False
    return True


def classify_asymptotics(params: SystemParams) -> AsymptoticClass:
    """Limit verdicts from ``a*alpha`` and the constants A, B.

    For ``a*alpha > 1`` and ``a*alpha = 1`` both components tend to 0; for
    ``|a*alpha| < 1`` a component tends to 0 or infinity as its constant is
    above or below 1, and is BOUNDARY when it equals 1.  Intended for
    positive solutions; cases where the argument does not go through are
    returned as UNSUPPORTED.
    """
    _require_p1(params, "asymptotic classification")
    q = params.discriminant
    sx, sy = params.x_shift, params.y_shift
    if q == 1:
        vx = Verdict.ZERO if sx > 0 else Verdict.UNSUPPORTED
        vy = Verdict.ZERO if sy > 0 else Verdict.UNSUPPORTED
        note = "" if sx > 0 and sy > 0 else "a*alpha = 1 needs a*beta+b > 0 and alpha*b+beta > 0"
        return AsymptoticClass(q, None, None, vx, vy, note)
    A = sx / (1 - q)
    B = sy / (1 - q)
    if q > 1:
        return AsymptoticClass(q, A, B, Verdict.ZERO, Verdict.ZERO)
    if q <= -1:
        return AsymptoticClass(q, A, B, Verdict.UNSUPPORTED, Verdict.UNSUPPORTED,
                               "a*alpha <= -1: (a*alpha)^n does not converge")

    def side(c: Fraction) -> Verdict:
        if c > 1:
            return Verdict.ZERO
        if c < 1:
            return Verdict.INFINITY
        return Verdict.BOUNDARY

    return AsymptoticClass(q, A, B, side(A), side(B))


def boundary_analysis(params: SystemParams, init: InitialData) -> list[BoundaryReport]:
    """Subsequence behaviour for even k when A = 1 and/or B = 1.

    With ``k = 2l`` the x orbit splits into ``x_{2(ln+r)}`` and
    ``x_{2(ln+r)+1}``, ``r = 0..l-1``.  When A = 1 the even family is
    frozen at ``x_{2r-k}`` iff ``x_{-k} = x_0`` and otherwise converges;
    the odd family is frozen at ``x_{2r+1-k}`` iff ``a y_{-k} = (1-b) y_0``.
    The y side is symmetric with B, alpha, beta.
    """
    _require_p1(params, "boundary analysis")
    k = params.k
    if k % 2:
        raise TheoremInapplicable("boundary analysis needs even k")
    q = params.discriminant
    if abs(q) >= 1:
        raise TheoremInapplicable("boundary analysis needs |a*alpha| < 1")
    A = params.x_shift / (1 - q)
    B = params.y_shift / (1 - q)
    if A != 1 and B != 1:
        raise TheoremInapplicable("boundary analysis needs A = 1 or B = 1")
    l = k // 2
    reports = []
    if A == 1:
        reports += _side_reports(
            X, init.x_at, init.x_at(-k) == init.x_at(0),
            params.a * init.y_at(-k) == (1 - params.b) * init.y_at(0),
            ("x_{-k} = x_0", "a*y_{-k} = (1-b)*y_0"), k, l,
        )
    if B == 1:
        reports += _side_reports(
            Y, init.y_at, init.y_at(-k) == init.y_at(0),
            params.alpha * init.x_at(-k) == (1 - params.beta) * init.x_at(0),
            ("y_{-k} = y_0", "alpha*x_{-k} = (1-beta)*x_0"), k, l,
        )
    return reports


def _side_reports(side, value_at, even_frozen, odd_frozen, labels, k, l):
    even_label, odd_label = labels
    out = []
    if even_frozen:
        out.append(BoundaryReport(side, BoundaryCase.FROZEN_EVEN_SUBSEQ, even_label,
                                  tuple(value_at(2 * r - k) for r in range(l))))
    else:
        out.append(BoundaryReport(side, BoundaryCase.CONVERGENT_EVEN_SUBSEQ,
                                  even_label.replace(" = ", " != ")))
    if odd_frozen:
        out.append(BoundaryReport(side, BoundaryCase.FROZEN_ODD_SUBSEQ, odd_label,
                                  tuple(value_at(2 * r + 1 - k) for r in range(l))))
    else:
        out.append(BoundaryReport(side, BoundaryCase.CONVERGENT_ODD_SUBSEQ,
                                  odd_label.replace(" = ", " != ")))
    return out


# numerical checks


def cauchy_tail(values: Sequence[float], count: int = 10, tol: float = 1e-8) -> bool:
    """True when the last ``count`` increments are all below ``tol`` in magnitude."""
    if len(values) < count + 1:
        raise InsufficientData(f"need {count + 1} values, got {len(values)}")
    tail = [float(v) for v in values[-(count + 1):]]
    return all(math.isfinite(t) for t in tail) and all(
        abs(b - a) < tol for a, b in zip(tail, tail[1:])
    )


def subsequence_nonincreasing(traj: Trajectory, side: str, k: int) -> bool:
    """Check ``{x_{kn-i}}_n`` (or y) is nonincreasing for each ``i = 0..k-1``."""
    for i in range(k):
        seq = traj.subsequence(side, -i, k)
        if any(later > earlier for earlier, later in zip(seq, seq[1:])):
            return False
    return True


def observed_limits(params: SystemParams, init: InitialData, horizon: int = 200,
                    small: float = 1e-6, large: float = 1e6) -> tuple[Verdict | None, Verdict | None]:
    """Numerical verdict per side from the last k values up to ``horizon``.

    A side is ZERO if those values are all below ``small``, INFINITY if all
    above ``large``, else None.  The float run is replaced by an exact run
    when it breaks down (underflow) or leaves the finite range.
    """
    traj = simulate(params, init, horizon, SimMode.FLOAT64)
    finite = all(math.isfinite(v) for v in traj.xs() + traj.ys())
    if traj.breakdown is not None or not finite or traj.last_index < horizon:
        traj = simulate(params, init, horizon, SimMode.EXACT)
        if traj.last_index < horizon:
            return None, None
        small_q, large_q = Fraction(small), Fraction(large)
    else:
        small_q, large_q = small, large
    k = params.k
    out = []
    for side in (X, Y):
        tail = [traj.point(n).x if side == X else traj.point(n).y
                for n in range(horizon - k + 1, horizon + 1)]
        if all(v < small_q for v in tail):
            out.append(Verdict.ZERO)
        elif all(v > large_q for v in tail):
            out.append(Verdict.INFINITY)
        else:
            out.append(None)
    return out[0], out[1]
