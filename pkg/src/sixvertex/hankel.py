"""Hankel determinants of moment sequences, the Izergin-Korepin partition
function, and the Toda-equation residual check.

Z_n = (ab)^(n^2) tau_n / (prod_{k<n} k!)^2 with tau_n the n x n Hankel
determinant of the derivatives of phi(t) = c/(ab).  tau_0 is defined as 1 so
the Toda relation tau_n tau_n'' - (tau_n')^2 = tau_{n+1} tau_{n-1} is
meaningful from n = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

from mpmath import mp

from . import _linalg
from .errors import ParameterDomainError, PrecisionFailureError
from .model import Phase, PhaseParams, PrecisionContext, to_mpf, weights_from_params
from .specfun import MomentSequence, phi_derivatives


def default_context(n: int) -> PrecisionContext:
    """Starting precision policy for size-n determinants: max(256, 24 n) bits.

    Empirical headroom for the severe ill-conditioning of these moment
    matrices; the two-precision verification pass is the safety net behind it.
    """
    return PrecisionContext(max(256, 24 * n))


@dataclass(frozen=True)
class HankelResult:
    n: int
    tau: object
    log_tau: object
    precision_used: int
    verified: bool

    def to_json(self) -> dict:
        dps = int(self.precision_used * 0.30103) + 2
        return {
            "n": self.n,
            "tau": mp.nstr(self.tau, dps),
            "log_tau": mp.nstr(self.log_tau, dps),
            "precision_used": self.precision_used,
            "verified": self.verified,
        }


@dataclass(frozen=True)
class ZnResult:
    """Partition function value with its log, provenance, and precision."""

    n: int
    zn: object
    log_zn: object
    phase: Phase
    params: Tuple
    bits: int
    verified: bool
    tau: Optional[HankelResult] = None

    def to_json(self) -> dict:
        dps = int(self.bits * 0.30103) + 2
        out = {
            "n": self.n,
            "zn": mp.nstr(self.zn, dps),
            "log_zn": mp.nstr(self.log_zn, dps),
            "phase": self.phase.value,
            "params": [mp.nstr(to_mpf(p), dps) for p in self.params],
            "bits": self.bits,
            "verified": self.verified,
        }
        if self.tau is not None:
            out["tau"] = self.tau.to_json()
        return out


@lru_cache(maxsize=None)
def _superfactorial_sq(n: int) -> int:
    """The exact integer (prod_{k=0}^{n-1} k!)^2; cached, it gets huge."""
    p = 1
    for k in range(n):
        p *= math.factorial(k)
    return p * p


def hankel_det(
    m: MomentSequence, n: int, ctx: Optional[PrecisionContext] = None
) -> HankelResult:
    """Verified Hankel determinant tau_n = det(mu_{i+k-2})_{1<=i,k<=n}.

    Raises PrecisionFailureError when the base and guard runs disagree beyond
    2^(-bits/2) relative, or when the determinant of a positive-measure moment
    matrix comes out non-positive.
    """
    if n < 1:
        raise ParameterDomainError(f"n >= 1 required, got {n}")
    ctx = ctx or m.context()
    tau = _linalg.hankel_determinant(m.values, n, ctx)
    if not tau > 0:
        raise PrecisionFailureError(
            f"tau_{n} <= 0 for a positive-measure moment sequence; raise bits"
        )
    with ctx.guardprec():
        log_tau = mp.log(tau)
    return HankelResult(n, tau, log_tau, ctx.bits, True)


def zn_ik(
    p: PhaseParams,
    n: int,
    ctx: Optional[PrecisionContext] = None,
    moments: Optional[MomentSequence] = None,
) -> ZnResult:
    """Izergin-Korepin partition function for the parameterized weights of p.

    ``moments`` may carry a precomputed phi-derivative sequence (order at
    least 2n-2) to share across a sweep in n.
    """
    if p.phase.is_critical:
        raise ParameterDomainError(
            "Izergin-Korepin evaluation needs a bulk phase; "
            "use the critical-line partition functions"
        )
    if n < 1:
        raise ParameterDomainError(f"n >= 1 required, got {n}")
    ctx = ctx or default_context(n)
    if moments is None or moments.order < 2 * n - 2:
        moments = phi_derivatives(p, 2 * n - 2, ctx)
    tau = hankel_det(moments, n, ctx)
    w = weights_from_params(p, ctx)
    with ctx.guardprec():
        ab = to_mpf(w.a) * to_mpf(w.b)
        denom = mp.mpf(_superfactorial_sq(n))
        zn = ab ** (n * n) * tau.tau / denom
        log_zn = n * n * mp.log(ab) + tau.log_tau - mp.log(denom)
    return ZnResult(n, zn, log_zn, p.phase, (p.t, p.gamma), ctx.bits, tau.verified, tau)


def zn_series(
    p: PhaseParams, nmax: int, ctx: Optional[PrecisionContext] = None
) -> List[ZnResult]:
    """Z_1..Z_nmax in one pass.

    Uses the verified pivot sequence of the nmax x nmax moment matrix: the
    pivots are the orthogonal-polynomial norms h_k, and tau_n = prod_{k<n} h_k
    recovers every leading determinant from a single elimination.
    """
    if p.phase.is_critical:
        raise ParameterDomainError(
            "Izergin-Korepin evaluation needs a bulk phase; "
            "use the critical-line partition functions"
        )
    if nmax < 1:
        raise ParameterDomainError(f"nmax >= 1 required, got {nmax}")
    ctx = ctx or default_context(nmax)
    moments = phi_derivatives(p, 2 * nmax - 2, ctx)
    pivots = _linalg.hankel_pivots(moments.values, nmax, ctx)
    w = weights_from_params(p, ctx)
    out = []
    with ctx.guardprec():
        ab = to_mpf(w.a) * to_mpf(w.b)
        log_ab = mp.log(ab)
        tau = mp.mpf(1)
        log_tau = mp.mpf(0)
        log_sf = mp.mpf(0)  # log prod_{k<n} k!
        for n in range(1, nmax + 1):
            tau *= pivots[n - 1]
            log_tau += mp.log(pivots[n - 1])
            if n >= 2:
                log_sf += mp.log(mp.mpf(math.factorial(n - 1)))
            zn = ab ** (n * n) * tau / mp.exp(2 * log_sf)
            log_zn = n * n * log_ab + log_tau - 2 * log_sf
            out.append(
                ZnResult(n, zn, log_zn, p.phase, (p.t, p.gamma), ctx.bits, True)
            )
    return out


def toda_residual(
    p: PhaseParams, n: int, h, ctx: Optional[PrecisionContext] = None
):
    """Relative residual of tau_n tau_n'' - (tau_n')^2 = tau_{n+1} tau_{n-1},
    with t-derivatives replaced by central differences at step h.

    The residual is |lhs - rhs| / rhs and scales as O(h^2) plus roundoff.
    """
    if n < 1:
        raise ParameterDomainError(f"n >= 1 required, got {n}")
    ctx = ctx or default_context(n + 1)

    def tau_at(params: PhaseParams, size: int):
        if size == 0:
            return mp.mpf(1)
        return hankel_det(phi_derivatives(params, 2 * size - 2, ctx), size, ctx).tau

    with ctx.guardprec():
        step = to_mpf(h)
        if not step > 0:
            raise ParameterDomainError(f"step h > 0 required, got {h}")
        # domain exit at t +- h surfaces here as a ParameterDomainError
        p_plus = p.shifted_t(step)
        p_minus = p.shifted_t(-step)
        t0 = tau_at(p, n)
        tp = tau_at(p_plus, n)
        tm = tau_at(p_minus, n)
        d1 = (tp - tm) / (2 * step)
        d2 = (tp - 2 * t0 + tm) / (step * step)
        rhs = tau_at(p, n + 1) * tau_at(p, n - 1)
        return abs(t0 * d2 - d1 * d1 - rhs) / rhs
