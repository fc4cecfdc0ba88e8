"""Orthogonal-polynomial norms h_k and recurrence ratios from moment
sequences, Meixner closed forms, and the partition functions on the two
critical lines.

h_k = D_{k+1}/D_k, the ratio of leading principal minors of the moment
Hankel matrix, so prod_{k<n} h_k telescopes to tau_n.  The minors come out
of the same unpivoted elimination that computes the determinant, and their
positivity doubles as a sanity check on the precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from mpmath import mp

from . import _linalg
from .errors import ParameterDomainError
from .hankel import ZnResult, default_context
from .model import Phase, PrecisionContext, to_mpf
from .specfun import (
    MomentFamily,
    MomentSequence,
    crit_afd_moments,
    crit_fd_moments,
    ferro_moments,
)


@dataclass(frozen=True)
class NormSequence:
    """Norms h_0..h_{n-1} of the monic orthogonal polynomials of one family."""

    family: MomentFamily
    params: Tuple
    h: Tuple
    bits: int
    guard_bits: int
    verified: bool

    def __len__(self) -> int:
        return len(self.h)

    def __getitem__(self, k: int):
        return self.h[k]

    def to_json(self) -> dict:
        dps = int(self.bits * 0.30103) + 2
        return {
            "family": self.family.value,
            "params": [mp.nstr(to_mpf(p), dps) for p in self.params],
            "bits": self.bits,
            "verified": self.verified,
            "h": [mp.nstr(v, dps) for v in self.h],
        }


def norms_from_moments(
    m: MomentSequence, n: int, ctx: Optional[PrecisionContext] = None
) -> NormSequence:
    """h_0..h_{n-1} from mu_0..mu_{2n-2}; every h_k must come out positive and
    survive the doubled-precision verification."""
    if n < 1:
        raise ParameterDomainError(f"n >= 1 required, got {n}")
    ctx = ctx or m.context()
    pivots = _linalg.hankel_pivots(m.values, n, ctx)
    return NormSequence(
        m.family, m.params, tuple(pivots), ctx.bits, ctx.guard_bits, True
    )


def recurrence_r(ns: NormSequence) -> Tuple:
    """Three-term recurrence ratios R_k = h_k / h_{k-1}, k = 1..n-1."""
    with mp.workprec(ns.guard_bits):
        return tuple(ns.h[k] / ns.h[k - 1] for k in range(1, len(ns.h)))


def meixner_norm(k: int, t, gamma, ctx: Optional[PrecisionContext] = None):
    """Closed-form norm of the monic Meixner-type polynomials orthogonal on
    l = 1, 2, ... with weight q^l, q = e^{2 gamma - 2 t}:

        h_k = (k!)^2 q^(k+1) / (1-q)^(2k+1)
    """
    if k < 0:
        raise ParameterDomainError(f"k >= 0 required, got {k}")
    ctx = ctx or default_context(k + 1)
    with ctx.guardprec():
        q = mp.exp(2 * (to_mpf(gamma) - to_mpf(t)))
        if not 0 < q < 1:
            raise ParameterDomainError(
                f"q = e^(2 gamma - 2 t) in (0,1) required (t > gamma), got q={q}"
            )
        f = mp.mpf(math.factorial(k))
        return f * f * q ** (k + 1) / (1 - q) ** (2 * k + 1)


def meixner_ratios(
    kmax: int, t, gamma, ctx: Optional[PrecisionContext] = None
) -> Tuple:
    """h_k / h_k^Meixner for k = 0..kmax, with h_k from the ferroelectric
    discrete weight 2 e^{-2tl} sinh(2 gamma l).  The ratios tend to 1."""
    if kmax < 0:
        raise ParameterDomainError(f"kmax >= 0 required, got {kmax}")
    ctx = ctx or default_context(kmax + 1)
    moments = ferro_moments(2 * kmax, t, gamma, ctx)
    norms = norms_from_moments(moments, kmax + 1, ctx)
    with ctx.guardprec():
        return tuple(
            norms[k] / meixner_norm(k, t, gamma, ctx) for k in range(kmax + 1)
        )


def meixner_ratio(k: int, t, gamma, ctx: Optional[PrecisionContext] = None):
    return meixner_ratios(k, t, gamma, ctx)[k]


@lru_cache(maxsize=None)
def _superfactorial(n: int) -> int:
    p = 1
    for k in range(n):
        p *= math.factorial(k)
    return p


def _zn_critical(
    phase: Phase, n: int, alpha, ctx: Optional[PrecisionContext]
) -> ZnResult:
    ctx = ctx or default_context(n)
    if phase is Phase.CRITICAL_FD:
        moments = crit_fd_moments(2 * n - 2, alpha, ctx)
    else:
        moments = crit_afd_moments(2 * n - 2, alpha, ctx)
    norms = norms_from_moments(moments, n, ctx)
    with ctx.guardprec():
        base = (1 + to_mpf(alpha)) / 2  # b/c at the critical point
        sf = mp.mpf(_superfactorial(n))
        prod_h = mp.mpf(1)
        for v in norms.h:
            prod_h *= v
        zn = base ** (n * n) * prod_h / (sf * sf)
        log_zn = n * n * mp.log(base) + mp.log(prod_h) - 2 * mp.log(sf)
    return ZnResult(n, zn, log_zn, phase, (alpha,), ctx.bits, norms.verified)


def zn_crit_fd(n: int, alpha, ctx: Optional[PrecisionContext] = None) -> ZnResult:
    """Partition function on the ferroelectric-disordered critical line at
    normalized weights a/c = (alpha-1)/2, b/c = (alpha+1)/2, alpha > 1:

        Z_n = ((alpha+1)/2)^(n^2) prod_{k<n} h_k / (k!)^2

    with h_k the norms of the weight e^{-x} - e^{-rx} on (0, inf),
    r = (alpha+1)/(alpha-1).
    """
    if n < 1:
        raise ParameterDomainError(f"n >= 1 required, got {n}")
    if not alpha > 1:
        raise ParameterDomainError(f"alpha > 1 required, got {alpha}")
    return _zn_critical(Phase.CRITICAL_FD, n, alpha, ctx)


def zn_crit_afd(n: int, alpha, ctx: Optional[PrecisionContext] = None) -> ZnResult:
    """Partition function on the antiferroelectric-disordered critical line at
    normalized weights a/c = (1-alpha)/2, b/c = (1+alpha)/2, -1 < alpha < 1:

        Z_n = ((1+alpha)/2)^(n^2) prod_{k<n} h_k / (k!)^2

    with h_k the norms of the two-sided exponential weight e^{-x} (x >= 0),
    e^{rx} (x < 0), r = (1+alpha)/(1-alpha).
    """
    if n < 1:
        raise ParameterDomainError(f"n >= 1 required, got {n}")
    if not -1 < alpha < 1:
        raise ParameterDomainError(f"-1 < alpha < 1 required, got {alpha}")
    return _zn_critical(Phase.CRITICAL_AFD, n, alpha, ctx)


def zn_crit_series(
    phase: Phase, nmax: int, alpha, ctx: Optional[PrecisionContext] = None
):
    """Z_1..Z_nmax on a critical line from a single norms pass."""
    if phase is Phase.CRITICAL_FD:
        if not alpha > 1:
            raise ParameterDomainError(f"alpha > 1 required, got {alpha}")
        moments_of = crit_fd_moments
    elif phase is Phase.CRITICAL_AFD:
        if not -1 < alpha < 1:
            raise ParameterDomainError(f"-1 < alpha < 1 required, got {alpha}")
        moments_of = crit_afd_moments
    else:
        raise ParameterDomainError(f"{phase.value} is not a critical line")
    if nmax < 1:
        raise ParameterDomainError(f"nmax >= 1 required, got {nmax}")
    ctx = ctx or default_context(nmax)
    moments = moments_of(2 * nmax - 2, alpha, ctx)
    norms = norms_from_moments(moments, nmax, ctx)
    out = []
    with ctx.guardprec():
        base = (1 + to_mpf(alpha)) / 2
        log_base = mp.log(base)
        prod_h = mp.mpf(1)
        log_h = mp.mpf(0)
        log_sf = mp.mpf(0)
        for n in range(1, nmax + 1):
            prod_h *= norms.h[n - 1]
            log_h += mp.log(norms.h[n - 1])
            if n >= 2:
                log_sf += mp.log(mp.mpf(math.factorial(n - 1)))
            zn = base ** (n * n) * prod_h / mp.exp(2 * log_sf)
            log_zn = n * n * log_base + log_h - 2 * log_sf
            out.append(ZnResult(n, zn, log_zn, phase, (alpha,), ctx.bits, True))
    return out
