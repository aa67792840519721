"""Two-convexity machinery for the squared distance to the zero section.

Hess(r^2) is diagonal in the metric's orthonormal co-frame with eigenvalues

    { 2,  2r a'/a,  2r b'/b,  2r c'/c },

and the derivative ordering 1 > r a'/a > r c'/c > -r b'/b > 0 makes the sum
of the two smallest eigenvalues positive for every r > 0.  Together with the
fact that the minimum of tr_L Hess over k-planes equals the sum of the k
smallest eigenvalues, that is the quantitative input to the uniqueness of
the minimal sphere; this module computes the spectrum, the ordering margins,
the exact k-plane minimum and an independent random-subspace minimizer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .ode import CoefficientSample, MetricProfile, shape_point


@dataclass(frozen=True)
class HessianSpectrum:
    """Eigenvalues of Hess(r^2) at one radius, ascending."""

    r: float
    eig: tuple
    min2sum: float

    def smallest_sum(self, k: int) -> float:
        if not 1 <= k <= 4:
            raise ValueError(f"k must be in 1..4, got {k}")
        return math.fsum(self.eig[:k])


def hessian_r2(sample: CoefficientSample, limit_at_zero: bool = False) -> HessianSpectrum:
    """Spectrum of Hess(r^2).  At r = 0 the Hessian degenerates to the
    normal-plane limit diag(2, 2, 0, 0); request it explicitly via
    limit_at_zero."""
    if sample.r == 0.0:
        if not limit_at_zero:
            raise ValueError("Hess(r^2) at r = 0 only via limit_at_zero=True")
        return HessianSpectrum(r=0.0, eig=(0.0, 0.0, 2.0, 2.0), min2sum=0.0)
    r = sample.r
    lam = sorted((2.0,
                  2.0 * r * sample.da / sample.a,
                  2.0 * r * sample.db / sample.b,
                  2.0 * r * sample.dc / sample.c))
    return HessianSpectrum(r=r, eig=tuple(lam), min2sum=lam[0] + lam[1])


def min_trace_over_kplanes(spectrum: HessianSpectrum, k: int) -> float:
    """Exact minimum of tr_L Hess(r^2) over k-dimensional subspaces L: the
    sum of the k smallest eigenvalues."""
    return spectrum.smallest_sum(k)


def chain_margins(profile: MetricProfile, grid: Iterable[float]):
    """Worst (smallest) values over the grid of the four strict gaps in

        1 > r a'/a > r c'/c > -r b'/b > 0.

    The middle gap r a'/a - r c'/c closes exponentially with the coefficient
    gap c - a, so it is evaluated in the cancellation-free form

        r (1 - x)(1 + x - y) / (c x (-y)),   1 - x = (c - a)/c,

    which is the same quantity by the quotient rule applied to x = a/c.
    """
    worst = [math.inf] * 4
    for r in grid:
        s = profile.at(r)
        g1 = 1.0 - r * s.da / s.a
        sp = shape_point(s)
        g2 = r * sp.one_minus_x * (1.0 + sp.x - sp.y) / (s.c * sp.x * (-sp.y))
        g3 = r * s.dc / s.c + r * s.db / s.b
        g4 = -r * s.db / s.b
        worst = [min(w, g) for w, g in zip(worst, (g1, g2, g3, g4))]
    return tuple(worst)


def brute_force_plane_min(sample: CoefficientSample, k: int,
                          trials: int = 100_000, seed: int | None = None,
                          polish: bool = True) -> float:
    """Minimize tr_L Hess(r^2) over random k-planes.

    Candidate subspaces are spanned by orthonormalized standard-normal
    frames (Haar on the Stiefel manifold).  With polish=True the best frames
    are refined by projected gradient descent with QR retraction, which uses
    only matrix-vector products with the Hessian, no eigendecomposition.
    Every evaluation is the trace over a genuine subspace, so the result can
    never undercut the true minimum (beyond rounding), and pure sampling
    (polish=False) converges to it from above as trials grow.
    """
    if sample.r <= 0.0:
        raise ValueError("plane minimization needs r > 0")
    if not 1 <= k <= 4:
        raise ValueError(f"k must be in 1..4, got {k}")
    if trials < 1000:
        raise ValueError(f"trials must be >= 1000, got {trials}")
    r = sample.r
    d = np.array([2.0,
                  2.0 * r * sample.da / sample.a,
                  2.0 * r * sample.db / sample.b,
                  2.0 * r * sample.dc / sample.c])
    rng = np.random.default_rng(seed)
    best = math.inf
    top_frames = []
    chunk = 200_000
    done = 0
    n_top = 8
    while done < trials:
        n = min(chunk, trials - done)
        frames, _ = np.linalg.qr(rng.standard_normal((n, 4, k)))
        tr = np.einsum("i,tij->t", d, frames ** 2)
        best = min(best, float(tr.min()))
        order = np.argsort(tr)[:n_top]
        top_frames.append(frames[order])
        done += n
    if polish:
        cand = np.concatenate(top_frames)
        tr = np.einsum("i,pij->p", d, cand ** 2)
        V = cand[np.argsort(tr)[:n_top]]
        eta = 0.25 / max(float(d.max() - d.min()), 1e-300)
        for _ in range(200):
            grad = 2.0 * d[None, :, None] * V
            vtg = np.einsum("pij,pik->pjk", V, grad)
            horiz = grad - np.einsum("pij,pjk->pik", V, vtg)
            V, _ = np.linalg.qr(V - eta * horiz)
            tr = np.einsum("i,pij->p", d, V ** 2)
            best = min(best, float(tr.min()))
    return best


@dataclass(frozen=True)
class SignReport:
    """Signs of the coefficient second derivatives along the profile."""

    a_concave: bool          # a'' < 0 at every grid radius
    b_concave: bool          # b'' < 0 at every grid radius
    max_dda: float
    max_ddb: float
    c_sign_changes: int      # bracketed sign changes of c''
    c_crossing: float | None  # bisected crossing radius, if bracketed


def second_derivative_signs(profile: MetricProfile,
                            grid: Iterable[float]) -> SignReport:
    """Check a'' < 0 and b'' < 0 on the grid and locate the sign change of
    c'' (positive near the zero section, negative far out) by bisection to
    1e-10 relative in r."""
    grid = list(grid)
    dda = [profile.at(r).dda for r in grid]
    ddb = [profile.at(r).ddb for r in grid]
    ddc = [profile.at(r).ddc for r in grid]
    brackets = [
        (grid[i], grid[i + 1])
        for i in range(len(grid) - 1)
        if (ddc[i] > 0.0) != (ddc[i + 1] > 0.0)
    ]
    crossing = None
    if brackets:
        lo, hi = brackets[0]
        flo = profile.at(lo).ddc
        while hi - lo > 1e-10 * hi:
            mid = 0.5 * (lo + hi)
            fmid = profile.at(mid).ddc
            if (fmid > 0.0) == (flo > 0.0):
                lo, flo = mid, fmid
            else:
                hi = mid
        crossing = 0.5 * (lo + hi)
    return SignReport(
        a_concave=max(dda) < 0.0,
        b_concave=max(ddb) < 0.0,
        max_dda=max(dda),
        max_ddb=max(ddb),
        c_sign_changes=len(brackets),
        c_crossing=crossing)
