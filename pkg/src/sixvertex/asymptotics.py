"""Large-n predictors for the partition function in each phase, and fitting
of the free energy F, the power-law exponent kappa, and prefactors from exact
log Z_n series.

Predictor shapes (log_prediction sums only the factors a phase provides):

    disordered          Z_n ~ C n^kappa F^(n^2)
    ferroelectric       Z_n ~ C G^n F^(n^2)
    critical FE-D       Z_n ~ C n^(1/4) G^(sqrt n) F^(n^2)
    antiferroelectric   Z_n ~ C theta4(n omega) F^(n^2)

The constants C are never predicted, only fitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from mpmath import mp

from .errors import ParameterDomainError
from .model import Phase, PhaseParams, PrecisionContext, to_mpf
from .hankel import default_context
from .specfun import theta1, theta1_prime0, theta4, zeta_three_halves


@dataclass(frozen=True)
class AsymptoticPrediction:
    phase: Phase
    n: int
    f: object
    log_prediction: object
    kappa: Optional[object] = None
    g: Optional[object] = None
    g_mode: Optional[str] = None  # "n" or "sqrt_n"
    c: Optional[object] = None
    theta_factor: Optional[object] = None

    def to_json(self, dps: int = 30) -> dict:
        out = {
            "phase": self.phase.value,
            "n": self.n,
            "f": mp.nstr(self.f, dps),
            "log_prediction": mp.nstr(self.log_prediction, dps),
        }
        for name in ("kappa", "g", "c", "theta_factor"):
            v = getattr(self, name)
            if v is not None:
                out[name] = mp.nstr(v, dps)
        if self.g_mode:
            out["g_mode"] = self.g_mode
        return out


@dataclass(frozen=True)
class FitResult:
    """Per-n estimates plus a window extrapolation for one fitted target."""

    target: str
    per_n_estimates: Tuple
    extrapolated: object
    window: Tuple[int, int]
    residual_norm: object
    log_c: Optional[object] = None

    def to_json(self, dps: int = 30) -> dict:
        out = {
            "target": self.target,
            "per_n": [[n, mp.nstr(v, dps)] for n, v in self.per_n_estimates],
            "extrapolated": mp.nstr(self.extrapolated, dps),
            "window": list(self.window),
            "residual_norm": mp.nstr(self.residual_norm, dps),
        }
        if self.log_c is not None:
            out["log_c"] = mp.nstr(self.log_c, dps)
        return out


def predict_disordered(
    t, gamma, n: int, ctx: Optional[PrecisionContext] = None, log_c=None
) -> AsymptoticPrediction:
    """F = pi a b / (2 gamma cos(pi t / (2 gamma))),
    kappa = 1/12 - 2 gamma^2 / (3 pi (pi - 2 gamma))."""
    PhaseParams(Phase.DISORDERED, t=t, gamma=gamma)
    ctx = ctx or default_context(n)
    with ctx.guardprec():
        tt, g = to_mpf(t), to_mpf(gamma)
        a, b = mp.sin(g - tt), mp.sin(g + tt)
        f = mp.pi * a * b / (2 * g * mp.cos(mp.pi * tt / (2 * g)))
        kappa = mp.mpf(1) / 12 - 2 * g * g / (3 * mp.pi * (mp.pi - 2 * g))
        log_pred = n * n * mp.log(f) + kappa * mp.log(n)
        if log_c is not None:
            log_pred += to_mpf(log_c)
        c = mp.exp(to_mpf(log_c)) if log_c is not None else None
    return AsymptoticPrediction(
        Phase.DISORDERED, n, f, log_pred, kappa=kappa, c=c
    )


def _ferro_constant(g, bits: int):
    """The ferroelectric prefactor: the Euler product prod_{k>=1} (1 - e^(-4 gamma k)).

    This is the infinite product of Meixner norm ratios; its leading factor
    1 - e^(-4 gamma) carries almost all of the value.  Truncated once the
    next factor is within 2^(-bits-8) of 1.
    """
    x = mp.exp(-4 * g)
    thresh = mp.mpf(2) ** (-(bits + 8))
    c = mp.mpf(1)
    xk = x
    while xk > thresh:
        c *= 1 - xk
        xk *= x
    return c


def predict_ferro(
    t, gamma, n: int, ctx: Optional[PrecisionContext] = None
) -> AsymptoticPrediction:
    """C = prod_{k>=1} (1 - e^(-4 gamma k)), G = e^(gamma - t),
    F = b = sinh(t + gamma)."""
    PhaseParams(Phase.FERROELECTRIC, t=t, gamma=gamma)
    ctx = ctx or default_context(n)
    with ctx.guardprec():
        tt, g = to_mpf(t), to_mpf(gamma)
        f = mp.sinh(tt + g)
        gg = mp.exp(g - tt)
        c = _ferro_constant(g, ctx.bits)
        log_pred = n * n * mp.log(f) + n * mp.log(gg) + mp.log(c)
    return AsymptoticPrediction(
        Phase.FERROELECTRIC, n, f, log_pred, g=gg, g_mode="n", c=c
    )


def predict_crit_fd(
    alpha, n: int, ctx: Optional[PrecisionContext] = None, log_c=None
) -> AsymptoticPrediction:
    """kappa = 1/4, G = exp(-zeta(3/2) sqrt(a/pi)), F = b, with the critical
    point a = (alpha-1)/2, b = (alpha+1)/2."""
    if not alpha > 1:
        raise ParameterDomainError(f"alpha > 1 required, got {alpha}")
    ctx = ctx or default_context(n)
    with ctx.guardprec():
        aa = to_mpf(alpha)
        a, b = (aa - 1) / 2, (aa + 1) / 2
        f = b
        gg = mp.exp(-zeta_three_halves(ctx) * mp.sqrt(a / mp.pi))
        kappa = mp.mpf(1) / 4
        log_pred = n * n * mp.log(f) + mp.sqrt(n) * mp.log(gg) + kappa * mp.log(n)
        if log_c is not None:
            log_pred += to_mpf(log_c)
        c = mp.exp(to_mpf(log_c)) if log_c is not None else None
    return AsymptoticPrediction(
        Phase.CRITICAL_FD, n, f, log_pred, kappa=kappa, g=gg, g_mode="sqrt_n", c=c
    )


def predict_af(
    t, gamma, n: int, ctx: Optional[PrecisionContext] = None, log_c=None
) -> AsymptoticPrediction:
    """F = pi a b theta1'(0) / (2 gamma theta1(omega)) with nome
    q = e^(-pi^2 / (2 gamma)) and omega = (pi/2)(1 + t/gamma); the oscillating
    factor is theta4(n omega)."""
    PhaseParams(Phase.ANTIFERROELECTRIC, t=t, gamma=gamma)
    ctx = ctx or default_context(n)
    with ctx.guardprec():
        tt, g = to_mpf(t), to_mpf(gamma)
        q = mp.exp(-mp.pi**2 / (2 * g))
        omega = mp.pi / 2 * (1 + tt / g)
        a, b = mp.sinh(g - tt), mp.sinh(g + tt)
        f = mp.pi * a * b * theta1_prime0(q, ctx) / (2 * g * theta1(omega, q, ctx))
        tf = theta4(n * omega, q, ctx)
        log_pred = n * n * mp.log(f) + mp.log(tf)
        if log_c is not None:
            log_pred += to_mpf(log_c)
        c = mp.exp(to_mpf(log_c)) if log_c is not None else None
    return AsymptoticPrediction(
        Phase.ANTIFERROELECTRIC, n, f, log_pred, c=c, theta_factor=tf
    )


# ---------------------------------------------------------------------------
# Fitting.  The regressions are tiny, so they simply run at a precision high
# enough to be exact relative to any series the package produces.

_FIT_PREC = 2048


def _check_series(series) -> List[Tuple[int, object]]:
    pts = [(int(n), to_mpf(v)) for n, v in series]
    if len(pts) < 4:
        raise ParameterDomainError(f"need >= 4 points, got {len(pts)}")
    ns = [n for n, _ in pts]
    if ns != list(range(ns[0], ns[0] + len(ns))):
        raise ParameterDomainError("series must cover consecutive n values")
    return pts


def _trailing_window(count: int, window: Optional[int]) -> int:
    if window is None:
        window = max(2, count // 3)
    if not 2 <= window <= count:
        raise ParameterDomainError(
            f"window must have between 2 and {count} points, got {window}"
        )
    return window


def fit_free_energy(
    series: Sequence, window: Optional[int] = None
) -> FitResult:
    """Estimate log F from a log Z_n series by the centered second difference
    (log Z_{n+1} - 2 log Z_n + log Z_{n-1}) / 2, which annihilates G^n-type
    and constant factors and leaves an O(n^-2) bias from n^kappa.

    ``window`` is a trailing point count; the extrapolation is that window's
    mean.  Returned per-n estimates pair each interior n with its estimate.
    """
    pts = _check_series(series)
    with mp.workprec(_FIT_PREC):
        ests = []
        for i in range(1, len(pts) - 1):
            n = pts[i][0]
            est = (pts[i + 1][1] - 2 * pts[i][1] + pts[i - 1][1]) / 2
            ests.append((n, est))
        w = _trailing_window(len(ests), window)
        tail = ests[-w:]
        mean = mp.fsum(v for _, v in tail) / w
        rms = mp.sqrt(mp.fsum((v - mean) ** 2 for _, v in tail) / w)
    return FitResult("F", tuple(ests), mean, (tail[0][0], tail[-1][0]), rms)


def fit_kappa(
    series: Sequence,
    log_f,
    log_g=None,
    g_mode: str = "n",
    window: Optional[int] = None,
) -> FitResult:
    """Least-squares slope of r_n = log Z_n - n^2 log F - (n or sqrt n) log G
    against log n over a trailing window; the intercept estimates log C.

    Per-n estimates are the pairwise difference quotients of r against log n.
    """
    if g_mode not in ("n", "sqrt_n"):
        raise ParameterDomainError(f"g_mode must be 'n' or 'sqrt_n', got {g_mode}")
    pts = _check_series(series)
    with mp.workprec(_FIT_PREC):
        lf = to_mpf(log_f)
        lg = to_mpf(log_g) if log_g is not None else None
        resid = []
        for n, lz in pts:
            r = lz - n * n * lf
            if lg is not None:
                r -= (mp.mpf(n) if g_mode == "n" else mp.sqrt(n)) * lg
            resid.append((n, r))
        ests = []
        for i in range(len(resid) - 1):
            (n1, r1), (n2, r2) = resid[i], resid[i + 1]
            ests.append((n2, (r2 - r1) / (mp.log(n2) - mp.log(n1))))
        w = _trailing_window(len(resid), window)
        tail = resid[-w:]
        xs = [mp.log(n) for n, _ in tail]
        ys = [r for _, r in tail]
        xbar = mp.fsum(xs) / w
        ybar = mp.fsum(ys) / w
        sxx = mp.fsum((x - xbar) ** 2 for x in xs)
        if sxx == 0:
            raise ParameterDomainError("degenerate window: log n values coincide")
        slope = mp.fsum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
        intercept = ybar - slope * xbar
        rms = mp.sqrt(
            mp.fsum((y - slope * x - intercept) ** 2 for x, y in zip(xs, ys)) / w
        )
    return FitResult(
        "kappa",
        tuple(ests),
        slope,
        (tail[0][0], tail[-1][0]),
        rms,
        log_c=intercept,
    )
