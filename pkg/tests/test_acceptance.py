"""Acceptance suite: every verification criterion at the default scale
(m = 1, r_max = 20, tol = 1e-10, 1000-point grid), one test per criterion,
each printing its pass/fail line.  Run with -s to see the lines live."""
import pytest

from ahgeom.config import RunConfig
from ahgeom.verify import run_verification

CRITERIA = [
    (1, "ode_residuals"),
    (2, "series_expansion"),
    (3, "shape_region"),
    (4, "hyperkahler_certificate"),
    (5, "strong_stability"),
    (6, "calibration_bound"),
    (7, "derivative_chain"),
    (8, "two_convexity"),
    (9, "kplane_oracle"),
    (10, "second_derivative_signs"),
    (11, "scale_covariance"),
    (12, "zero_section_limits"),
]


@pytest.fixture(scope="module")
def report(profile1):
    config = RunConfig()  # defaults: m=1, r_max=20, tol=1e-10, grid 1000
    return run_verification(config, profile=profile1)


@pytest.mark.parametrize("index,name", CRITERIA)
def test_criterion(report, index, name):
    check = next(c for c in report.checks if c.name == name)
    status = "PASS" if check.passed else "FAIL"
    print(f"ACCEPTANCE {index:02d} {name}: {status} "
          f"worst={check.worst:.3e} ({check.direction} {check.budget:g}) "
          f"[{check.note}]")
    assert check.passed, f"{name}: {check.note}"


def test_every_criterion_reported_once(report):
    names = [c.name for c in report.checks]
    assert names == [name for _, name in CRITERIA]
    assert len(set(names)) == len(names)


def test_all_pass(report):
    assert report.all_pass
