"""Vertex weights, the anisotropy parameter, phase classification, and the
standard trigonometric/hyperbolic parameterizations of the weights.

Exact (rational) inputs stay exact wherever the formulas are rational;
everything else is evaluated with mpmath at an explicitly passed precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from mpmath import mp

from .errors import ParameterDomainError

Real = Union[int, float, Fraction, "mp.mpf"]


class Phase(str, Enum):
    DISORDERED = "disordered"
    FERROELECTRIC = "ferroelectric"
    ANTIFERROELECTRIC = "antiferroelectric"
    CRITICAL_FD = "critical-fd"
    CRITICAL_AFD = "critical-afd"

    @property
    def is_critical(self) -> bool:
        return self in (Phase.CRITICAL_FD, Phase.CRITICAL_AFD)


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision plus the multiplier used for verification reruns.

    ``bits`` is the target mantissa size; internal computations run at
    ``guard_bits = bits * verify_factor`` so that a disagreement between the
    two levels flags a genuine precision failure.
    """

    bits: int = 256
    verify_factor: int = 2

    def __post_init__(self) -> None:
        if self.bits < 64:
            raise ParameterDomainError(f"bits >= 64 required, got {self.bits}")
        if self.verify_factor < 2:
            raise ParameterDomainError(
                f"verify_factor >= 2 required, got {self.verify_factor}"
            )

    @property
    def guard_bits(self) -> int:
        return self.bits * self.verify_factor

    @property
    def dps(self) -> int:
        """Decimal digits carried by ``bits`` mantissa bits."""
        return int(self.bits * 0.3010299956639812) + 2

    def workprec(self):
        return mp.workprec(self.bits)

    def guardprec(self):
        return mp.workprec(self.guard_bits)

    def verify_tolerance(self):
        """Relative agreement required between base and guard runs: 2^(-bits/2)."""
        with mp.workprec(64):
            return mp.mpf(2) ** (-(self.bits // 2))


DEFAULT_CONTEXT = PrecisionContext()


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def to_mpf(x) -> "mp.mpf":
    """Convert to mpf at the ambient precision.

    Values that are already mpf pass through unrounded; Fractions divide
    exactly once at the ambient precision.
    """
    if isinstance(x, mp.mpf):
        return x
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return mp.mpf(x)


@dataclass(frozen=True)
class Weights:
    """The (a, b, c) triple of positive vertex weights."""

    a: Real
    b: Real
    c: Real

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            if not getattr(self, name) > 0:
                raise ParameterDomainError(
                    f"weight {name} > 0 required, got {getattr(self, name)}"
                )

    @property
    def is_rational(self) -> bool:
        return all(is_rational(x) for x in (self.a, self.b, self.c))

    def as_mpf(self):
        return to_mpf(self.a), to_mpf(self.b), to_mpf(self.c)


@dataclass(frozen=True)
class PhaseClassification:
    delta: Real
    phase: Phase
    borderline: bool


def delta(w: Weights, ctx: Optional[PrecisionContext] = None) -> Real:
    """Anisotropy (a^2 + b^2 - c^2) / (2ab); exact for rational weights."""
    if w.is_rational:
        a, b, c = Fraction(w.a), Fraction(w.b), Fraction(w.c)
        return (a * a + b * b - c * c) / (2 * a * b)
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        a, b, c = w.as_mpf()
        return (a * a + b * b - c * c) / (2 * a * b)


def classify(w: Weights, ctx: Optional[PrecisionContext] = None) -> PhaseClassification:
    """Phase of a weight triple from the sign of delta against +-1.

    Rational weights are classified exactly.  Floating weights use a relative
    tolerance of 2^(-bits/2) on |delta -+ 1|; a hit inside the tolerance band
    that is not an exact equality is reported with ``borderline=True``.
    """
    ctx = ctx or DEFAULT_CONTEXT
    d = delta(w, ctx)
    if w.is_rational:
        if d == 1:
            return PhaseClassification(d, Phase.CRITICAL_FD, False)
        if d == -1:
            return PhaseClassification(d, Phase.CRITICAL_AFD, False)
    else:
        with ctx.guardprec():
            tol = ctx.verify_tolerance() * max(mp.mpf(1), abs(d))
            if abs(d - 1) <= tol:
                return PhaseClassification(d, Phase.CRITICAL_FD, d != 1)
            if abs(d + 1) <= tol:
                return PhaseClassification(d, Phase.CRITICAL_AFD, d != -1)
    if d > 1:
        return PhaseClassification(d, Phase.FERROELECTRIC, False)
    if d < -1:
        return PhaseClassification(d, Phase.ANTIFERROELECTRIC, False)
    return PhaseClassification(d, Phase.DISORDERED, False)


def classify_phase(w: Weights, ctx: Optional[PrecisionContext] = None) -> Phase:
    return classify(w, ctx).phase


@dataclass(frozen=True)
class PhaseParams:
    """Phase tag plus its parameters: (t, gamma) for the three bulk phases,
    alpha for the two critical lines.

    Domains enforced at construction:
      disordered          0 < gamma < pi/2 and |t| < gamma
      ferroelectric       0 < gamma < t           (b > a + c branch)
      antiferroelectric   gamma > 0 and |t| < gamma
      critical-fd         alpha > 1
      critical-afd        -1 < alpha < 1
    """

    phase: Phase
    t: Optional[Real] = None
    gamma: Optional[Real] = None
    alpha: Optional[Real] = None

    def __post_init__(self) -> None:
        if self.phase.is_critical:
            if self.alpha is None or self.t is not None or self.gamma is not None:
                raise ParameterDomainError(
                    f"{self.phase.value} takes alpha only, not (t, gamma)"
                )
            a = self.alpha
            if self.phase is Phase.CRITICAL_FD and not a > 1:
                raise ParameterDomainError(f"critical-fd requires alpha > 1, got {a}")
            if self.phase is Phase.CRITICAL_AFD and not (-1 < a < 1):
                raise ParameterDomainError(
                    f"critical-afd requires -1 < alpha < 1, got {a}"
                )
            return
        if self.t is None or self.gamma is None or self.alpha is not None:
            raise ParameterDomainError(
                f"{self.phase.value} takes (t, gamma) only, not alpha"
            )
        t, g = self.t, self.gamma
        if not g > 0:
            raise ParameterDomainError(f"gamma > 0 required, got {g}")
        if self.phase is Phase.DISORDERED:
            with mp.workprec(128):
                if not to_mpf(g) < mp.pi / 2:
                    raise ParameterDomainError(
                        f"disordered requires gamma < pi/2, got {g}"
                    )
            if not abs(t) < g:
                raise ParameterDomainError(
                    f"disordered requires |t| < gamma, got t={t}, gamma={g}"
                )
        elif self.phase is Phase.FERROELECTRIC:
            if not g < t:
                raise ParameterDomainError(
                    f"ferroelectric requires 0 < gamma < t, got t={t}, gamma={g}"
                )
        elif self.phase is Phase.ANTIFERROELECTRIC:
            if not abs(t) < g:
                raise ParameterDomainError(
                    f"antiferroelectric requires |t| < gamma, got t={t}, gamma={g}"
                )

    def shifted_t(self, dt) -> "PhaseParams":
        """Same phase and gamma with t moved by dt (domain re-checked)."""
        return PhaseParams(self.phase, t=to_mpf(self.t) + dt, gamma=self.gamma)


def weights_from_params(
    p: PhaseParams, ctx: Optional[PrecisionContext] = None
) -> Weights:
    """Weights of the standard parameterization for the bulk phases.

    disordered          a = sin(gamma - t),  b = sin(gamma + t),  c = sin(2 gamma)
    ferroelectric       a = sinh(t - gamma), b = sinh(t + gamma), c = sinh(2 gamma)
    antiferroelectric   a = sinh(gamma - t), b = sinh(gamma + t), c = sinh(2 gamma)

    The critical lines have no finite (t, gamma) chart; use the dedicated
    critical-line partition functions instead.
    """
    if p.phase.is_critical:
        raise ParameterDomainError(
            f"{p.phase.value} has no (t, gamma) weight chart; "
            "use the critical-line partition functions"
        )
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        t, g = to_mpf(p.t), to_mpf(p.gamma)
        if p.phase is Phase.DISORDERED:
            return Weights(mp.sin(g - t), mp.sin(g + t), mp.sin(2 * g))
        if p.phase is Phase.FERROELECTRIC:
            return Weights(mp.sinh(t - g), mp.sinh(t + g), mp.sinh(2 * g))
        return Weights(mp.sinh(g - t), mp.sinh(g + t), mp.sinh(2 * g))


def normalize(w: Weights, ctx: Optional[PrecisionContext] = None):
    """Rescale to c = 1.  Returns ((a/c, b/c, 1), scale) with scale = c, so
    Z_n(a, b, c) = scale^(n^2) * Z_n(a/c, b/c, 1)."""
    if w.is_rational:
        a, b, c = Fraction(w.a), Fraction(w.b), Fraction(w.c)
        return Weights(a / c, b / c, Fraction(1)), c
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        a, b, c = w.as_mpf()
        return Weights(a / c, b / c, mp.mpf(1)), c


def swap_ab(w: Weights) -> Weights:
    """Exchange a and b.

    The ferroelectric chart above covers the b > a + c region; the mirrored
    a > b + c region is obtained by applying this swap to its output.
    """
    return Weights(w.b, w.a, w.c)
