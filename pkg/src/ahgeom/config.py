"""Dataclass configs for the model and for CLI runs."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one Atiyah-Hitchin model run.

    m is the radius of the zero-section sphere; the metric with parameter m
    is the m-fold rescaling of the unit model, so m fixes every length scale.
    r_max is the integration horizon in the same units as the geodesic
    distance r, and tol the (dimensionless) local error tolerance of the
    adaptive integrator.
    """

    m: float
    r_max: float
    tol: float = 1e-10

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"m must be positive, got {self.m}")
        if not self.r_max > 0:
            raise ValueError(f"r_max must be positive, got {self.r_max}")
        if not 0 < self.tol < 1e-2:
            raise ValueError(f"tol must lie in (0, 1e-2), got {self.tol}")

    @classmethod
    def default(cls, m: float = 1.0, tol: float = 1e-10) -> "ModelParams":
        # horizon 20*m: the verified claims are local or monotone, so a
        # finite scale-covariant horizon suffices
        return cls(m=m, r_max=20.0 * m, tol=tol)


@dataclass(frozen=True)
class RunConfig:
    """One CLI invocation: model parameters plus output options."""

    m: float = 1.0
    r_max: float | None = None  # None -> 20*m
    tol: float = 1e-10
    grid_points: int = 1000
    seed: int | None = None
    fmt: str = "csv"
    output: str | None = None

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.fmt!r}")
        if self.grid_points < 2:
            raise ValueError(f"grid_points must be >= 2, got {self.grid_points}")
        # delegate positivity checks (m, r_max, tol) to ModelParams
        self.params()

    def params(self) -> ModelParams:
        r_max = 20.0 * self.m if self.r_max is None else self.r_max
        return ModelParams(m=self.m, r_max=r_max, tol=self.tol)
