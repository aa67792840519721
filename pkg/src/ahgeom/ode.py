"""Coefficient ODE of the cohomogeneity-one metric ansatz

    ds^2 = dr^2 + a^2 (s1)^2 + b^2 (s2)^2 + c^2 (s3)^2

with a(0) = 0, b(0) = -m, c(0) = m.  The system has a regular singular point
at r = 0 (every right-hand side divides by a coefficient that vanishes
there), so integration starts from an exact series bootstrap at a small
radius r0 and proceeds with an adaptive embedded Runge-Kutta pair.  Profiles
store values plus first and second derivatives at every accepted step and
evaluate anywhere in [0, r_max]: by series below r0, by cubic Hermite
interpolation above.

The difference c - a closes exponentially (rate ~ 3/m), so beyond r ~ 12 m
it falls below the floating-point resolution of c itself and the rounded
a, c collapse onto each other.  Since several strict inequalities of the
geometry (x = a/c < 1 and the derivative ordering a'/a > c'/c) live exactly
in that difference, the integrator tracks the gap u = c - a as an extra
state component with its own cancellation-free equation

    u' = u * (a + c - b)(a + b + c) / (2abc),

an exact algebraic consequence of the coefficient system.  Samples expose it
as `gap`, at full relative precision at every radius.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .config import ModelParams
from .series import SeriesCoefficients, expand


class IntegrationError(RuntimeError):
    """Integrator failure; carries the radius that was reached."""

    def __init__(self, message: str, r_reached: float):
        super().__init__(f"{message} (at r = {r_reached:.6g})")
        self.r_reached = r_reached


def rhs(a: float, b: float, c: float):
    """Right-hand side (a', b', c') of the coefficient system."""
    if a == 0.0 or b == 0.0 or c == 0.0:
        raise ValueError(
            "coefficient ODE is singular where a, b or c vanishes; "
            "use the series bootstrap at r = 0")
    return ((a * a - (b - c) ** 2) / (2.0 * b * c),
            (b * b - (c - a) ** 2) / (2.0 * c * a),
            (c * c - (a - b) ** 2) / (2.0 * a * b))


def rhs_apq(a: float, p: float, q: float):
    """Right-hand side (a', q', p') in the parity variables p = c+b, q = c-b.

    Returned in the order (da, dq, dp).
    """
    d = p * p - q * q
    if a == 0.0 or d == 0.0:
        raise ValueError("rhs_apq is singular at a = 0 or p^2 = q^2")
    da = 2.0 * (a * a - q * q) / d
    dq = 2.0 * q * (p * p - a * a) / (a * d)
    dp = 2.0 + 2.0 * p * (q * q - a * a) / (a * d)
    return da, dq, dp


def gap_rate(a: float, b: float, c: float) -> float:
    """g with (c - a)' = (c - a) * g; exact consequence of the system."""
    return (a + c - b) * (a + b + c) / (2.0 * a * b * c)


def _d2_component(u, v, w, du, dv, dw):
    # chain rule through f = (u^2 - (v-w)^2) / (2 v w)
    n = u * u - (v - w) ** 2
    fu = u / (v * w)
    fv = -(v - w) / (v * w) - n / (2.0 * v * v * w)
    fw = (v - w) / (v * w) - n / (2.0 * v * w * w)
    return fu * du + fv * dv + fw * dw


def second_derivatives(a, b, c, da, db, dc):
    """(a'', b'', c'') by analytic differentiation of the right-hand side."""
    return (_d2_component(a, b, c, da, db, dc),
            _d2_component(b, c, a, db, dc, da),
            _d2_component(c, a, b, dc, da, db))


@dataclass(frozen=True)
class CoefficientSample:
    """The metric's full local data at one radius.

    gap carries c - a at full relative precision (it underflows the plain
    float subtraction c - a beyond r ~ 12 m); dgap is its r-derivative.
    """

    r: float
    a: float
    b: float
    c: float
    da: float
    db: float
    dc: float
    dda: float
    ddb: float
    ddc: float
    gap: float = None  # type: ignore[assignment]
    dgap: float = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.gap is None:
            object.__setattr__(self, "gap", self.c - self.a)
        if self.dgap is None:
            object.__setattr__(self, "dgap", self.dc - self.da)

    @property
    def p(self) -> float:
        return self.c + self.b

    @property
    def q(self) -> float:
        return self.c - self.b


@dataclass(frozen=True)
class ShapePoint:
    """Scale-free shape coordinates (x, y) = (a/c, b/c).

    one_minus_x carries 1 - x at full relative precision; the rounded x
    saturates at 1.0 once c - a falls below the resolution of c.
    """

    x: float
    y: float
    one_minus_x: float


def shape_point(sample: CoefficientSample) -> ShapePoint:
    if sample.c == 0.0:
        raise ValueError("shape coordinates are undefined where c = 0")
    return ShapePoint(x=sample.a / sample.c, y=sample.b / sample.c,
                      one_minus_x=sample.gap / sample.c)


def region_margins(sample: CoefficientSample):
    """Margins of the admissible shape region, each positive exactly when
    the strict inequalities  y < -1 + x,  0 < x < 1,  -1 < y < 0  hold.

    Written in cancellation-free form: the x < 1 margin is evaluated from
    the tracked gap c - a, and y < -1 + x as (-b - (c - a))/c, so both stay
    meaningful after the rounded x saturates at 1.
    """
    sp = shape_point(sample)
    m_region = (-sample.b - sample.gap) / sample.c  # (x - 1) - y
    return (m_region, sp.x, sp.one_minus_x, sp.y + 1.0, -sp.y)


def sample_from_state(r: float, a: float, b: float, c: float,
                      gap: float | None = None) -> CoefficientSample:
    """Sample with derivatives from the ODE and second derivatives from its
    analytic differentiation (valid only away from the singular locus)."""
    da, db, dc = rhs(a, b, c)
    dda, ddb, ddc = second_derivatives(a, b, c, da, db, dc)
    if gap is None:
        gap = c - a
    return CoefficientSample(r, a, b, c, da, db, dc, dda, ddb, ddc,
                             gap=gap, dgap=gap * gap_rate(a, b, c))


def sample_from_series(series: SeriesCoefficients, r: float) -> CoefficientSample:
    """Sample with all fields from term-wise series differentiation."""
    a, p, q, da, dp, dq, dda, ddp, ddq = series.apq(r)
    b, c = 0.5 * (p - q), 0.5 * (p + q)
    db, dc = 0.5 * (dp - dq), 0.5 * (dp + dq)
    return CoefficientSample(
        r=r, a=a, b=b, c=c, da=da, db=db, dc=dc,
        dda=dda, ddb=0.5 * (ddp - ddq), ddc=0.5 * (ddp + ddq),
        gap=c - a, dgap=dc - da)


def bootstrap(params: ModelParams, order: int = 10,
              r0: float | None = None) -> CoefficientSample:
    """Series-evaluated sample at the bootstrap radius r0 (auto-chosen so the
    series truncation estimate sits below params.tol/10)."""
    series = expand(params.m, order)
    if r0 is None:
        r0 = series.truncation_radius(params.tol)
    if not r0 > 0:
        raise ValueError(f"bootstrap radius must be positive, got {r0}")
    return sample_from_series(series, r0)


# Dormand-Prince 5(4) embedded pair; the fifth-order solution propagates and
# the last stage is the first stage of the next step (FSAL).
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_ERR = (71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40)

# Step cap keeping cubic Hermite interpolation between stored nodes well
# inside the 10*tol reconstruction budget (interpolation error ~ h^4).
_HERMITE_STEP_FACTOR = 0.75


def _f4(y):
    # flow of the augmented state (a, b, c, u): coefficient system plus the
    # slaved gap equation
    a, b, c, u = y
    da, db, dc = rhs(a, b, c)
    return (da, db, dc, u * gap_rate(a, b, c))


def _combine(y, h, ks, coefs):
    return tuple(
        y[i] + h * math.fsum(cf * k[i] for cf, k in zip(coefs, ks))
        for i in range(4))


def integrate(params: ModelParams, series_order: int = 10) -> "MetricProfile":
    """Adaptive integration from the series bootstrap at r0 out to r_max.

    Every accepted step has an embedded local error estimate at most tol
    relative to the solution scale m + |y| on the coefficient components
    (the gap component is linear and slaved, so it inherits that accuracy).
    Raises IntegrationError on step-size underflow or if a stored state
    leaves the physical region (a > 0, c > a, b < 0).
    """
    series = expand(params.m, series_order)
    r0 = series.truncation_radius(params.tol)
    if not r0 < 0.5 * params.r_max:
        raise ValueError(
            f"r_max = {params.r_max:g} too small: series bootstrap already "
            f"covers r < {r0:g}")

    m, tol = params.m, params.tol
    h_max = _HERMITE_STEP_FACTOR * m * tol ** 0.25
    h_min = 1e-13 * m

    start = sample_from_series(series, r0)
    y = (start.a, start.b, start.c, start.gap)
    samples = [sample_from_state(r0, start.a, start.b, start.c, gap=start.gap)]

    r = r0
    h = min(h_max, r0)
    k1 = _f4(y)
    while r < params.r_max:
        last = r + h >= params.r_max
        if last:
            h = params.r_max - r
        ks = [k1]
        try:
            for s in range(1, 7):
                ys = _combine(y, h, ks, _DP_A[s])
                ks.append(_f4(ys))
        except ValueError:
            raise IntegrationError("stage state hit a coordinate zero", r)
        y_new = ys  # stage 7 state: the fifth-order solution
        norm = max(
            abs(h * math.fsum(e * k[i] for e, k in zip(_DP_ERR, ks)))
            / (tol * (m + abs(y[i])))
            for i in range(3))
        if norm <= 1.0:
            r_new = params.r_max if last else r + h
            a, b, c, u = y_new
            if a <= 0.0 or c <= 0.0 or b >= 0.0 or u <= 0.0:
                raise IntegrationError(
                    "state left the physical region a > 0 > b, c > a; "
                    "integrator failure", r_new)
            samples.append(sample_from_state(r_new, a, b, c, gap=u))
            r, y = r_new, y_new
            k1 = ks[6]  # FSAL
            fac = 5.0 if norm == 0.0 else min(5.0, 0.9 * norm ** -0.2)
            h = min(h * fac, h_max)
        else:
            h *= max(0.2, 0.9 * norm ** -0.2)
        if h < h_min and r < params.r_max:
            raise IntegrationError("step size underflow", r)

    return MetricProfile(params=params, bootstrap=series, r0=r0,
                         samples=tuple(samples))


@dataclass(frozen=True)
class MetricProfile:
    """Numerically constructed metric: ordered samples over [r0, r_max] plus
    the series used below r0.  Immutable after construction; evaluation is
    safe from concurrent readers."""

    params: ModelParams
    bootstrap: SeriesCoefficients
    r0: float
    samples: tuple
    _radii: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        radii = np.array([s.r for s in self.samples])
        if not np.all(np.diff(radii) > 0):
            raise ValueError("profile samples must have strictly increasing r")
        object.__setattr__(self, "_radii", radii)

    @property
    def r_max(self) -> float:
        return self.params.r_max

    def at(self, r: float) -> CoefficientSample:
        """Metric data at any radius in [0, r_max]: exact series limit below
        the bootstrap radius, cubic Hermite interpolation of the stored
        values and derivatives elsewhere.

        Interpolated samples carry the Hermite derivative as (da, db, dc) and
        analytic second derivatives of the interpolated state, so residual
        checks against the ODE measure genuine interpolation error.
        """
        if not 0.0 <= r <= self.r_max * (1.0 + 1e-12):
            raise ValueError(f"r = {r:g} outside [0, {self.r_max:g}]")
        if r < self.r0:
            return sample_from_series(self.bootstrap, r)
        r = min(r, self.samples[-1].r)
        i = int(np.searchsorted(self._radii, r))
        if i < len(self.samples) and self.samples[i].r == r:
            return self.samples[i]
        lo, hi = self.samples[i - 1], self.samples[i]
        return _hermite(lo, hi, r)

    def grid(self, n: int, include_zero: bool = False):
        """Evenly spaced radii r_max * i/n for i = 1..n (plus 0 on request)."""
        pts = [self.r_max * i / n for i in range(1, n + 1)]
        return ([0.0] + pts) if include_zero else pts


def _hermite(lo: CoefficientSample, hi: CoefficientSample, r: float) -> CoefficientSample:
    h = hi.r - lo.r
    t = (r - lo.r) / h
    h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
    h10 = t * (1.0 - t) ** 2
    h01 = t * t * (3.0 - 2.0 * t)
    h11 = t * t * (t - 1.0)
    d00 = 6.0 * t * (t - 1.0) / h
    d10 = 3.0 * t * t - 4.0 * t + 1.0
    d11 = 3.0 * t * t - 2.0 * t

    def interp(y0, y1, m0, m1):
        v = h00 * y0 + h * (h10 * m0 + h11 * m1) + h01 * y1
        dv = d00 * (y0 - y1) + d10 * m0 + d11 * m1
        return v, dv

    a, da = interp(lo.a, hi.a, lo.da, hi.da)
    b, db = interp(lo.b, hi.b, lo.db, hi.db)
    c, dc = interp(lo.c, hi.c, lo.dc, hi.dc)
    gap, dgap = interp(lo.gap, hi.gap, lo.dgap, hi.dgap)
    dda, ddb, ddc = second_derivatives(a, b, c, *rhs(a, b, c))
    return CoefficientSample(r, a, b, c, da, db, dc, dda, ddb, ddc,
                             gap=gap, dgap=dgap)


def product_identity_residual(profile: MetricProfile,
                              grid: Iterable[float]) -> float:
    """Worst residual of the product-form identities

        (ca + ab)' = 2 (ca)(ab) / (abc)    and cyclic companions

    over the given radii, with the left side assembled from the sample's
    stored derivatives.  An algebraic consequence of the coefficient system,
    so this measures integration plus interpolation error only.
    """
    worst = 0.0
    for r in grid:
        s = profile.at(r)
        a, b, c = s.a, s.b, s.c
        da, db, dc = s.da, s.db, s.dc
        den = a * b * c
        e1 = (dc * a + c * da + da * b + a * db) - 2.0 * (c * a) * (a * b) / den
        e2 = (da * b + a * db + db * c + b * dc) - 2.0 * (a * b) * (b * c) / den
        e3 = (db * c + b * dc + dc * a + c * da) - 2.0 * (b * c) * (c * a) / den
        worst = max(worst, abs(e1), abs(e2), abs(e3))
    return worst
