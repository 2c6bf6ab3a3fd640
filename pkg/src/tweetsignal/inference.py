"""Statistical core: least squares, F-distribution tails, the two-model
Granger causality test, and differenced autoregressive forecasting.

The F tail probability is computed from scratch via the regularized
incomplete beta function (continued fraction, modified Lentz algorithm);
the test suite cross-checks it against an independent implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import linalg

from .errors import DegeneracyError, RankDeficiencyError

RANK_RTOL = 1e-10  # relative to the largest column norm


@dataclass
class OlsFit:
    coefficients: np.ndarray  # intercept first, caller's column order
    residuals: np.ndarray
    rss: float
    n_obs: int
    n_params: int

    @property
    def residual_df(self) -> int:
        return self.n_obs - self.n_params


def ols_fit(y: Sequence[float], X: np.ndarray) -> OlsFit:
    """Least squares by column-pivoted QR; no explicit matrix inverse.

    ``X`` is the full design matrix including the intercept column.
    Raises ``RankDeficiencyError`` naming the first linearly dependent
    column, judged against ``RANK_RTOL`` times the largest column norm.
    """
    yv = np.asarray(y, dtype=np.float64)
    Xm = np.asarray(X, dtype=np.float64)
    if Xm.ndim != 2:
        raise ValueError("X must be a 2-d design matrix")
    n, p = Xm.shape
    if yv.shape != (n,):
        raise ValueError(f"y has length {yv.shape[0]}, X has {n} rows")
    if n <= p:
        raise ValueError(f"need more rows than columns, got {n} rows for {p} columns")

    Q, R, piv = linalg.qr(Xm, mode="economic", pivoting=True)
    col_norms = np.linalg.norm(Xm, axis=0)
    tol = RANK_RTOL * max(col_norms.max(), 1e-300)
    diag = np.abs(np.diag(R))
    deficient = np.nonzero(diag < tol)[0]
    if deficient.size:
        bad = int(piv[deficient[0]])
        raise RankDeficiencyError(
            f"design matrix is rank deficient: column {bad} is linearly "
            f"dependent on the others",
            column=bad,
        )

    rhs = Q.T @ yv
    beta_piv = linalg.solve_triangular(R, rhs)
    beta = np.empty(p, dtype=np.float64)
    beta[piv] = beta_piv
    residuals = yv - Xm @ beta
    return OlsFit(
        coefficients=beta,
        residuals=residuals,
        rss=float(residuals @ residuals),
        n_obs=n,
        n_params=p,
    )


# --- regularized incomplete beta / F upper tail ---------------------------

_BETA_EPS = 1e-16
_BETA_FPMIN = 1e-300
_BETA_MAXIT = 500


def _beta_cont_frac(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETA_FPMIN:
        d = _BETA_FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAXIT + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_FPMIN:
            d = _BETA_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETA_FPMIN:
            c = _BETA_FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_FPMIN:
            d = _BETA_FPMIN
        c = 1.0 + aa / c
        if abs(c) < _BETA_FPMIN:
            c = _BETA_FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_EPS:
            return h
    raise ArithmeticError(
        f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})"
    )


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) to near machine precision for a, b > 0 and x in [0, 1]."""
    if a <= 0 or b <= 0:
        raise ValueError(f"a and b must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # the continued fraction converges fast only on one side of the mean
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cont_frac(a, b, x) / a
    return 1.0 - front * _beta_cont_frac(b, a, 1.0 - x) / b


def f_upper_tail(f: float, df1: int, df2: int) -> float:
    """P(F_{df1, df2} > f): the Pr(>F) column of a regression F test."""
    if df1 < 1 or df2 < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got df1={df1}, df2={df2}")
    if f < 0:
        raise ValueError(f"F statistic must be >= 0, got {f}")
    if f == 0.0:
        return 1.0
    x = df2 / (df2 + df1 * f)
    return regularized_incomplete_beta(x, df2 / 2.0, df1 / 2.0)


def significance_stars(p: float) -> str:
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    if p < 0.1:
        return "."
    return ""


# --- Granger causality -----------------------------------------------------


@dataclass
class GrangerResult:
    lag_order: int
    f_stat: float
    p_value: float
    df1: int
    df2: int  # residual df of the unrestricted model
    rss_restricted: float
    rss_unrestricted: float


def _lag_columns(series: np.ndarray, lag_order: int) -> np.ndarray:
    """Columns [x_{t-1}, ..., x_{t-L}] for t = L..N-1."""
    n = series.shape[0]
    return np.column_stack(
        [series[lag_order - i : n - i] for i in range(1, lag_order + 1)]
    )


def granger_test(
    effect: Sequence[float], cause: Sequence[float], lag_order: int = 1
) -> GrangerResult:
    """Nested-model F test: do lags of ``cause`` improve the prediction of
    ``effect`` beyond its own lags?

    Unrestricted: effect_t ~ 1 + L lags of effect + L lags of cause.
    Restricted:   effect_t ~ 1 + L lags of effect.
    """
    ev = np.asarray(effect, dtype=np.float64)
    cv = np.asarray(cause, dtype=np.float64)
    if ev.shape != cv.shape or ev.ndim != 1:
        raise ValueError("effect and cause must be 1-d series of equal length")
    if not (np.isfinite(ev).all() and np.isfinite(cv).all()):
        raise ValueError("series must be finite")
    L = lag_order
    if L < 1:
        raise ValueError(f"lag_order must be >= 1, got {L}")
    n = ev.shape[0]
    if n - L <= 2 * L + 1:
        raise ValueError(
            f"series too short for lag order {L}: need more than {3 * L + 1} observations, got {n}"
        )

    y = ev[L:]
    own = _lag_columns(ev, L)
    other = _lag_columns(cv, L)
    ones = np.ones((n - L, 1))
    unrestricted = ols_fit(y, np.hstack([ones, own, other]))
    restricted = ols_fit(y, np.hstack([ones, own]))

    df2 = unrestricted.residual_df
    delta = restricted.rss - unrestricted.rss
    if delta < 0:  # nested models; only float noise can push this below zero
        delta = 0.0
    f_stat = (delta / L) / (unrestricted.rss / df2)
    return GrangerResult(
        lag_order=L,
        f_stat=f_stat,
        p_value=f_upper_tail(f_stat, L, df2),
        df1=L,
        df2=df2,
        rss_restricted=restricted.rss,
        rss_unrestricted=unrestricted.rss,
    )


def render_granger_report(
    result: GrangerResult, effect_name: str = "V3", cause_name: str = "V2"
) -> str:
    """Text block in the classic R ``grangertest`` layout: two model lines,
    a Res.Df/Df/F/Pr(>F) table, and the significance-codes legend."""
    L = result.lag_order
    lags = f"1:{L}"
    f_text = "%.4g" % result.f_stat
    p_text = "%.4g" % result.p_value
    stars = significance_stars(result.p_value)

    headers = ["", "Res.Df", "Df", "F", "Pr(>F)"]
    row1 = ["1", str(result.df2), "", "", ""]
    row2 = ["2", str(result.df2 + L), str(-L), f_text, p_text]
    widths = [max(len(h), len(a), len(b)) for h, a, b in zip(headers, row1, row2)]

    def fmt(cells):
        return " ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()

    lines = [
        "Granger causality test",
        "",
        f"Model 1: {effect_name} ~ Lags({effect_name}, {lags}) + Lags({cause_name}, {lags})",
        f"Model 2: {effect_name} ~ Lags({effect_name}, {lags})",
        fmt(headers),
        fmt(row1),
        fmt(row2) + (f" {stars}" if stars else ""),
        "---",
        "Signif. codes:  0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1",
    ]
    return "\n".join(lines)


# --- differenced autoregression ---------------------------------------------


def difference(series: Sequence[float], d: int) -> np.ndarray:
    """Apply first differencing ``d`` times; output length = len - d."""
    values = np.asarray(series, dtype=np.float64)
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    if values.shape[0] <= d:
        raise ValueError(f"series of length {values.shape[0]} too short to difference {d} times")
    return np.diff(values, n=d) if d > 0 else values.copy()


@dataclass
class ArModel:
    order: int  # p
    differencing: int  # d
    coefficients: np.ndarray  # intercept followed by p lag weights
    sigma2: float

    @property
    def intercept(self) -> float:
        return float(self.coefficients[0])

    @property
    def lag_weights(self) -> np.ndarray:
        return self.coefficients[1:]


def ar_fit(series: Sequence[float], p: int, d: int = 0) -> ArModel:
    """Fit y_t = c + sum_i phi_i y_{t-i} on the d-times differenced series."""
    if p < 0:
        raise ValueError(f"p must be >= 0, got {p}")
    values = np.asarray(series, dtype=np.float64)
    if values.shape[0] - d < p + 5:
        raise ValueError(
            f"need at least {p + 5 + d} observations for p={p}, d={d}, got {values.shape[0]}"
        )
    y_all = difference(values, d)
    n = y_all.shape[0]
    y = y_all[p:]
    columns = [np.ones(n - p)]
    if p > 0:
        columns.append(_lag_columns(y_all, p))
    fit = ols_fit(y, np.column_stack(columns))
    return ArModel(
        order=p,
        differencing=d,
        coefficients=fit.coefficients,
        sigma2=fit.rss / fit.residual_df,
    )


def _psi_weights(phi: np.ndarray, horizon: int) -> np.ndarray:
    """Impulse-response weights of the AR recursion, psi_0 = 1."""
    psi = np.zeros(horizon)
    psi[0] = 1.0
    p = phi.shape[0]
    for j in range(1, horizon):
        upto = min(j, p)
        psi[j] = sum(phi[i - 1] * psi[j - i] for i in range(1, upto + 1))
    return psi


def ar_forecast(
    model: ArModel, history: Sequence[float], horizon: int
) -> list[tuple[float, float, float]]:
    """Point forecasts with 95% intervals, integrated back to levels.

    The AR recursion is iterated on the differenced scale; the forecast
    error variance at step k is sigma2 times the cumulated squared
    impulse-response weights, integrated through each differencing level.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    values = np.asarray(history, dtype=np.float64)
    p, d = model.order, model.differencing
    if values.shape[0] < p + d:
        raise ValueError(
            f"history of length {values.shape[0]} too short: need >= {p + d} for p={p}, d={d}"
        )

    # last value at each differencing level, needed to integrate back up
    seeds = [float(difference(values, j)[-1]) for j in range(d)]

    diffed = difference(values, d)
    phi = model.lag_weights
    window = list(diffed[len(diffed) - p :]) if p > 0 else []
    forecasts = []
    for _ in range(horizon):
        nxt = model.intercept
        for i in range(1, p + 1):
            nxt += phi[i - 1] * window[-i]
        forecasts.append(nxt)
        if p > 0:
            window.append(nxt)
            window.pop(0)
    points = np.array(forecasts)

    psi = _psi_weights(np.asarray(phi, dtype=np.float64), horizon)
    for seed in reversed(seeds):
        points = seed + np.cumsum(points)
        psi = np.cumsum(psi)

    variances = model.sigma2 * np.cumsum(psi**2)
    half_widths = 1.96 * np.sqrt(variances)
    return [
        (float(pt), float(pt - hw), float(pt + hw))
        for pt, hw in zip(points, half_widths)
    ]
