"""Arbitrary-precision scalar kernels: derivatives of the moment generating
function phi, negative-order polylogarithms, Jacobi theta series, zeta(3/2),
and closed-form moment sequences for all five weight families.

Derivatives of phi are generated exactly through the decompositions

    disordered          phi = cot(gamma - t)  + cot(gamma + t)
    ferroelectric       phi = coth(t - gamma) - coth(t + gamma)
    antiferroelectric   phi = coth(gamma - t) + coth(gamma + t)

so the k-th derivative is an integer-coefficient polynomial in cot/coth of
the two arguments; no numerical differentiation is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from mpmath import mp

from .errors import ParameterDomainError, PrecisionFailureError
from .model import DEFAULT_CONTEXT, Phase, PhaseParams, PrecisionContext, to_mpf


class MomentFamily(str, Enum):
    DISORDERED_PHI = "disordered-phi"
    FERRO_PHI = "ferro-phi"
    AF_PHI = "af-phi"
    FERRO_DISCRETE = "ferro-discrete"
    AF_DISCRETE = "af-discrete"
    CRIT_FD = "critical-fd"
    CRIT_AFD = "critical-afd"


_PHI_FAMILY = {
    Phase.DISORDERED: MomentFamily.DISORDERED_PHI,
    Phase.FERROELECTRIC: MomentFamily.FERRO_PHI,
    Phase.ANTIFERROELECTRIC: MomentFamily.AF_PHI,
}


@dataclass(frozen=True)
class MomentSequence:
    """Moments mu_0..mu_m of one weight family at one parameter point.

    ``values`` are mpf computed at ``guard_bits`` precision; ``bits`` is the
    target working precision of downstream consumers.
    """

    family: MomentFamily
    params: Tuple
    values: Tuple
    bits: int
    guard_bits: int

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int):
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    def context(self) -> PrecisionContext:
        return PrecisionContext(self.bits, max(2, self.guard_bits // self.bits))

    def to_json(self) -> dict:
        dps = int(self.bits * 0.30103) + 2
        return {
            "family": self.family.value,
            "params": [mp.nstr(to_mpf(p), dps) for p in self.params],
            "order": self.order,
            "bits": self.bits,
            "values": [mp.nstr(v, dps) for v in self.values],
        }


# ---------------------------------------------------------------------------
# Integer-coefficient derivative polynomials for cot and coth.
# p_0(x) = x and p_{k+1} = -(1 + x^2) p_k'   gives (d/du)^k cot u = p_k(cot u);
# q_0(x) = x and q_{k+1} =  (1 - x^2) q_k'   gives (d/du)^k coth u = q_k(coth u).
# Coefficient tuples are lowest-degree first.


def _poly_diff(c: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple((i + 1) * c[i + 1] for i in range(len(c) - 1))


@lru_cache(maxsize=None)
def _cot_poly(k: int) -> Tuple[int, ...]:
    if k == 0:
        return (0, 1)
    d = _poly_diff(_cot_poly(k - 1))
    out = [0] * (len(d) + 2)
    for i, ci in enumerate(d):
        out[i] -= ci
        out[i + 2] -= ci
    return tuple(out)


@lru_cache(maxsize=None)
def _coth_poly(k: int) -> Tuple[int, ...]:
    if k == 0:
        return (0, 1)
    d = _poly_diff(_coth_poly(k - 1))
    out = [0] * (len(d) + 2)
    for i, ci in enumerate(d):
        out[i] += ci
        out[i + 2] -= ci
    return tuple(out)


def _poly_eval(coeffs: Tuple[int, ...], x):
    acc = mp.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def phi(p: PhaseParams, ctx: Optional[PrecisionContext] = None):
    """The ratio c/(ab) as a function of t within a bulk phase."""
    return phi_derivatives(p, 0, ctx)[0]


def phi_derivatives(
    p: PhaseParams, kmax: int, ctx: Optional[PrecisionContext] = None
) -> MomentSequence:
    """phi(t), phi'(t), ..., phi^(kmax)(t) as a MomentSequence.

    These are precisely the moments of the (phase-dependent) measure whose
    Laplace transform is phi, so they feed the Hankel determinant directly.
    """
    if p.phase.is_critical:
        raise ParameterDomainError(
            f"phi is defined on the bulk phases, not {p.phase.value}"
        )
    if kmax < 0:
        raise ParameterDomainError(f"kmax >= 0 required, got {kmax}")
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        t, g = to_mpf(p.t), to_mpf(p.gamma)
        values = []
        if p.phase is Phase.DISORDERED:
            xm, xp = mp.cot(g - t), mp.cot(g + t)
            for k in range(kmax + 1):
                c = _cot_poly(k)
                v = _poly_eval(c, xp)
                vm = _poly_eval(c, xm)
                values.append(v + vm if k % 2 == 0 else v - vm)
        elif p.phase is Phase.FERROELECTRIC:
            xm, xp = mp.coth(t - g), mp.coth(t + g)
            for k in range(kmax + 1):
                c = _coth_poly(k)
                values.append(_poly_eval(c, xm) - _poly_eval(c, xp))
        else:
            xm, xp = mp.coth(g - t), mp.coth(g + t)
            for k in range(kmax + 1):
                c = _coth_poly(k)
                v = _poly_eval(c, xp)
                vm = _poly_eval(c, xm)
                values.append(v + vm if k % 2 == 0 else v - vm)
    return MomentSequence(
        _PHI_FAMILY[p.phase], (p.t, p.gamma), tuple(values), ctx.bits, ctx.guard_bits
    )


# ---------------------------------------------------------------------------
# Negative-order polylogarithm via Eulerian polynomials:
# Li_{-k}(q) = sum_{l>=1} l^k q^l = (sum_j A(k, j) q^{j+1}) / (1 - q)^{k+1}.


@lru_cache(maxsize=None)
def _eulerian_row(k: int) -> Tuple[int, ...]:
    """A(k, 0..k-1) by the ascent recurrence; rows are all-positive ints."""
    if k == 1:
        return (1,)
    prev = _eulerian_row(k - 1)
    row = []
    for j in range(k):
        left = (j + 1) * prev[j] if j < len(prev) else 0
        right = (k - j) * prev[j - 1] if 0 < j else 0
        row.append(left + right)
    return tuple(row)


def polylog_neg(k: int, q, ctx: Optional[PrecisionContext] = None):
    """Li_{-k}(q) = sum_{l>=1} l^k q^l for 0 < q < 1.

    Fraction input gives the exact rational value; anything else is evaluated
    in mpf at guard precision.  The Eulerian-polynomial form has positive
    coefficients, so the evaluation is cancellation free.
    """
    if k < 0:
        raise ParameterDomainError(f"order k >= 0 required, got {k}")
    if not 0 < q < 1:
        raise ParameterDomainError(f"polylog_neg requires 0 < q < 1, got {q}")
    if isinstance(q, Fraction):
        if k == 0:
            return q / (1 - q)
        num = sum(a * q ** (j + 1) for j, a in enumerate(_eulerian_row(k)))
        return num / (1 - q) ** (k + 1)
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        qq = to_mpf(q)
        if k == 0:
            return qq / (1 - qq)
        num = mp.mpf(0)
        for a in reversed(_eulerian_row(k)):
            num = (num + a) * qq
        return num / (1 - qq) ** (k + 1)


# ---------------------------------------------------------------------------
# Closed-form moments of the five weight families.


def ferro_moment(k: int, t, gamma, ctx: Optional[PrecisionContext] = None):
    """sum_{l>=1} l^k 2 e^{-2tl} sinh(2 gamma l) for t > gamma > 0."""
    _require(gamma > 0, f"gamma > 0 required, got {gamma}")
    _require(t > gamma, f"t > gamma required, got t={t}, gamma={gamma}")
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        tt, gg = to_mpf(t), to_mpf(gamma)
        q1 = mp.exp(-2 * (tt - gg))
        q2 = mp.exp(-2 * (tt + gg))
        return polylog_neg(k, q1, ctx) - polylog_neg(k, q2, ctx)


def af_moment(k: int, t, gamma, ctx: Optional[PrecisionContext] = None):
    """sum_{l in Z} l^k e^{2tl - 2 gamma |l|} for |t| < gamma."""
    _require(gamma > 0, f"gamma > 0 required, got {gamma}")
    _require(abs(t) < gamma, f"|t| < gamma required, got t={t}, gamma={gamma}")
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        tt, gg = to_mpf(t), to_mpf(gamma)
        qp = mp.exp(2 * (tt - gg))
        qm = mp.exp(-2 * (tt + gg))
        s = polylog_neg(k, qp, ctx)
        neg = polylog_neg(k, qm, ctx)
        s = s + neg if k % 2 == 0 else s - neg
        if k == 0:
            s += 1
        return s


def crit_fd_moment(k: int, alpha, ctx: Optional[PrecisionContext] = None):
    """int_0^inf x^k (e^{-x} - e^{-rx}) dx = k! (1 - r^{-(k+1)}), r=(alpha+1)/(alpha-1)."""
    _require(alpha > 1, f"alpha > 1 required, got {alpha}")
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        a = to_mpf(alpha)
        r = (a + 1) / (a - 1)
        return mp.mpf(math.factorial(k)) * (1 - r ** (-(k + 1)))


def crit_afd_moment(k: int, alpha, ctx: Optional[PrecisionContext] = None):
    """Moments of the two-sided exponential weight e^{-x} (x>=0) / e^{rx} (x<0):
    k! (1 + (-1)^k r^{-(k+1)}), r=(1+alpha)/(1-alpha)."""
    _require(-1 < alpha < 1, f"-1 < alpha < 1 required, got {alpha}")
    ctx = ctx or DEFAULT_CONTEXT
    with ctx.guardprec():
        a = to_mpf(alpha)
        r = (1 + a) / (1 - a)
        sign = 1 if k % 2 == 0 else -1
        return mp.mpf(math.factorial(k)) * (1 + sign * r ** (-(k + 1)))


def ferro_moments(
    kmax: int, t, gamma, ctx: Optional[PrecisionContext] = None
) -> MomentSequence:
    ctx = ctx or DEFAULT_CONTEXT
    vals = tuple(ferro_moment(k, t, gamma, ctx) for k in range(kmax + 1))
    return MomentSequence(
        MomentFamily.FERRO_DISCRETE, (t, gamma), vals, ctx.bits, ctx.guard_bits
    )


def af_moments(
    kmax: int, t, gamma, ctx: Optional[PrecisionContext] = None
) -> MomentSequence:
    ctx = ctx or DEFAULT_CONTEXT
    vals = tuple(af_moment(k, t, gamma, ctx) for k in range(kmax + 1))
    return MomentSequence(
        MomentFamily.AF_DISCRETE, (t, gamma), vals, ctx.bits, ctx.guard_bits
    )


def crit_fd_moments(
    kmax: int, alpha, ctx: Optional[PrecisionContext] = None
) -> MomentSequence:
    ctx = ctx or DEFAULT_CONTEXT
    vals = tuple(crit_fd_moment(k, alpha, ctx) for k in range(kmax + 1))
    return MomentSequence(
        MomentFamily.CRIT_FD, (alpha,), vals, ctx.bits, ctx.guard_bits
    )


def crit_afd_moments(
    kmax: int, alpha, ctx: Optional[PrecisionContext] = None
) -> MomentSequence:
    ctx = ctx or DEFAULT_CONTEXT
    vals = tuple(crit_afd_moment(k, alpha, ctx) for k in range(kmax + 1))
    return MomentSequence(
        MomentFamily.CRIT_AFD, (alpha,), vals, ctx.bits, ctx.guard_bits
    )


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterDomainError(msg)


# ---------------------------------------------------------------------------
# Jacobi theta series.  Real z, real nome 0 < q < 0.9 (no modular transform:
# larger nomes are rejected).  Truncation: stop once the next term's magnitude
# bound falls below 2^(-bits-8) of the running scale.


def _check_nome(q) -> None:
    if not 0 < q < 0.9:
        raise ParameterDomainError(
            f"nome q in (0, 0.9) required, got {q} (modular transform out of scope)"
        )


_THETA_MAX_TERMS = 10_000


def theta1(z, q, ctx: Optional[PrecisionContext] = None):
    """theta_1(z) = 2 sum_{k>=0} (-1)^k q^((k+1/2)^2) sin((2k+1) z)."""
    _check_nome(q)
    ctx = ctx or DEFAULT_CONTEXT
    with mp.workprec(ctx.guard_bits + 32):
        zz, qq = to_mpf(z), to_mpf(q)
        thresh = mp.mpf(2) ** (-(ctx.bits + 8))
        scale = 2 * qq ** mp.mpf(0.25)
        s = mp.mpf(0)
        for k in range(_THETA_MAX_TERMS):
            mag = 2 * qq ** (mp.mpf(2 * k + 1) ** 2 / 4)
            term = mag * mp.sin((2 * k + 1) * zz)
            s += term if k % 2 == 0 else -term
            scale = max(scale, abs(s))
            nxt = 2 * qq ** (mp.mpf(2 * k + 3) ** 2 / 4)
            if nxt < thresh * scale:
                return s
    raise PrecisionFailureError("theta series did not converge")  # pragma: no cover


def theta4(z, q, ctx: Optional[PrecisionContext] = None):
    """theta_4(z) = 1 + 2 sum_{k>=1} (-1)^k q^(k^2) cos(2 k z)."""
    _check_nome(q)
    ctx = ctx or DEFAULT_CONTEXT
    with mp.workprec(ctx.guard_bits + 32):
        zz, qq = to_mpf(z), to_mpf(q)
        thresh = mp.mpf(2) ** (-(ctx.bits + 8))
        s = mp.mpf(1)
        for k in range(1, _THETA_MAX_TERMS):
            term = 2 * qq ** (k * k) * mp.cos(2 * k * zz)
            s += term if k % 2 == 0 else -term
            nxt = 2 * qq ** ((k + 1) * (k + 1))
            if nxt < thresh * max(mp.mpf(1), abs(s)):
                return s
    raise PrecisionFailureError("theta series did not converge")  # pragma: no cover


def theta1_prime0(q, ctx: Optional[PrecisionContext] = None):
    """theta_1'(0) = 2 sum_{k>=0} (-1)^k (2k+1) q^((k+1/2)^2)."""
    _check_nome(q)
    ctx = ctx or DEFAULT_CONTEXT
    with mp.workprec(ctx.guard_bits + 32):
        qq = to_mpf(q)
        thresh = mp.mpf(2) ** (-(ctx.bits + 8))
        s = mp.mpf(0)
        for k in range(_THETA_MAX_TERMS):
            term = 2 * (2 * k + 1) * qq ** (mp.mpf(2 * k + 1) ** 2 / 4)
            s += term if k % 2 == 0 else -term
            nxt = 2 * (2 * k + 3) * qq ** (mp.mpf(2 * k + 3) ** 2 / 4)
            if nxt < thresh * abs(s):
                return s
    raise PrecisionFailureError("theta series did not converge")  # pragma: no cover


# ---------------------------------------------------------------------------
# zeta(3/2) through the alternating (eta) series with the Cohen / Rodriguez
# Villegas / Zagier Chebyshev acceleration: error ~ (3 + sqrt 8)^(-terms).


def zeta_three_halves(ctx: Optional[PrecisionContext] = None):
    ctx = ctx or DEFAULT_CONTEXT
    with mp.workprec(ctx.guard_bits + 32):
        terms = int((ctx.guard_bits + 16) * 0.3933) + 4
        d = (3 + 2 * mp.sqrt(2)) ** terms
        d = (d + 1 / d) / 2
        b = mp.mpf(-1)
        c = -d
        s = mp.mpf(0)
        for k in range(terms):
            c = b - c
            s += c * mp.mpf(k + 1) ** mp.mpf(-1.5)
            b *= mp.mpf((k + terms) * (k - terms)) / ((k + mp.mpf(0.5)) * (k + 1))
        eta = s / d
        return eta / (1 - 1 / mp.sqrt(2))
