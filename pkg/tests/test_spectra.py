"""Eigenvalue curves, envelopes, crossings and the discretized solver."""
import math

import numpy as np
import pytest

from wigner_bounds import (
    Disk,
    KernelMatrix,
    SpectrumResult,
    annulus_eigenvalue,
    annulus_envelope,
    assemble,
    crossing_radius,
    disk_eigenvalue,
    disk_envelope,
    extremal_eigenvalues,
)

# greatest root of lambda_3(a) = lambda_4(a), frozen from a dense scan
# of the quadrature curves refined by bisection
A3_CROSSING = 1.9696155060244161


def lam_closed(n, a):
    e = math.exp(-a * a)
    if n == 0:
        return 1 - e
    if n == 1:
        return 1 - (1 + 2 * a**2) * e
    if n == 2:
        return 1 - (1 + 2 * a**4) * e
    return 1 - (1 + 2 * a**2 - 2 * a**4 + (4.0 / 3.0) * a**6) * e


def test_disk_eigenvalue_closed_forms():
    for a in (0.3, 1.0, 2.0, 3.0):
        for n in range(4):
            assert abs(disk_eigenvalue(n, a) - lam_closed(n, a)) < 1e-12


def test_disk_eigenvalue_edge_cases():
    for n in (0, 3, 17):
        assert disk_eigenvalue(n, 0.0) == 0.0
    with pytest.raises(ValueError):
        disk_eigenvalue(-1, 1.0)
    with pytest.raises(ValueError):
        disk_eigenvalue(0, -0.5)


def test_disk_eigenvalue_saturates_for_large_disk():
    # lambda_n -> 1 once the disk swallows the state: radius past the
    # classical turning point sqrt(2n+1) plus four units of tail
    for n in range(21):
        a = math.sqrt(2 * n + 1) + 4.0
        assert abs(disk_eigenvalue(n, a) - 1.0) < 1e-10


def test_annulus_eigenvalue_is_disk_difference():
    for n, r1, r2 in ((0, 0.5, 1.0), (3, 1.0, 2.0), (7, 0.2, 0.7)):
        want = disk_eigenvalue(n, r2) - disk_eigenvalue(n, r1)
        assert annulus_eigenvalue(n, r1, r2) == want


def test_annulus_eigenvalue_values():
    assert annulus_eigenvalue(0, 0.0, 1.0) == disk_eigenvalue(0, 1.0)
    want = math.exp(-1.0) - math.exp(-4.0)
    assert abs(annulus_eigenvalue(0, 1.0, 2.0) - want) < 1e-14
    with pytest.raises(ValueError):
        annulus_eigenvalue(0, 1.0, 0.5)


def test_disk_envelope_branches():
    assert disk_envelope(0.5).n_min == 1
    assert disk_envelope(1.2).n_min == 2
    env = disk_envelope(1.0)
    assert env.n_min == 1  # threefold tie at a = 1 breaks toward smaller n
    assert abs(env.lambda_min - (1 - 3 / math.e)) < 1e-12
    assert env.n_max == 0
    assert env.method == "exact"


def test_disk_envelope_lambda_max_is_lambda0():
    for a in np.linspace(0.1, 3.0, 12):
        env = disk_envelope(float(a))
        assert env.n_max == 0
        assert abs(env.lambda_max - disk_eigenvalue(0, float(a))) < 1e-15


def test_disk_envelope_cutoff_warning():
    env = disk_envelope(1.0, n_max=1)
    assert env.n_min == 1
    assert any("cutoff" in w for w in env.warnings)


def test_crossing_radii():
    assert abs(crossing_radius(1) - 1.0) < 1e-9
    assert abs(crossing_radius(2) - math.sqrt((3 + math.sqrt(3)) / 2)) < 1e-9
    assert abs(crossing_radius(3) - A3_CROSSING) < 1e-8
    with pytest.raises(ValueError):
        crossing_radius(0)


def test_extremal_eigenvalues_trivial_matrices():
    zero = KernelMatrix(0.0, 0.1, np.zeros((4, 4)), "null")
    res = extremal_eigenvalues(zero)
    assert (res.lambda_min, res.lambda_max) == (0.0, 0.0)
    diag = KernelMatrix(0.0, 0.1, np.diag([0.3, -0.1]), "diag")
    res = extremal_eigenvalues(diag)
    assert (res.lambda_min, res.lambda_max) == (-0.1, 0.3)
    assert res.method == "nystrom"
    assert res.residual < 1e-14


def test_extremal_eigenvectors_normalized():
    km = assemble(Disk((0.0, 0.0), 1.0), -6.0, 0.025, 481)
    res = extremal_eigenvalues(km)
    assert abs(res.psi_min.norm() - 1.0) < 1e-12
    assert abs(res.psi_max.norm() - 1.0) < 1e-12
    # extremizers live near the disk, not at the window edge
    tails = np.abs(res.psi_max.values[:40])
    assert np.max(tails) < 1e-6


def test_nystrom_matches_envelope():
    env = disk_envelope(1.5)
    res = extremal_eigenvalues(assemble(Disk((0.0, 0.0), 1.5)))
    assert abs(res.lambda_min - env.lambda_min) < 1e-4
    assert abs(res.lambda_max - env.lambda_max) < 1e-4


def test_annulus_envelope_scans_both_sides():
    env = annulus_envelope(1.0, 2.0)
    vals = [annulus_eigenvalue(n, 1.0, 2.0) for n in range(60)]
    assert abs(env.lambda_min - min(vals)) < 1e-15
    assert abs(env.lambda_max - max(vals)) < 1e-15
    assert env.n_max != 0  # the widest ring mode is not the ground mode here


def test_spectrum_result_validation():
    with pytest.raises(ValueError):
        SpectrumResult(lambda_min=1.0, lambda_max=0.0, method="exact")
    with pytest.raises(ValueError):
        SpectrumResult(lambda_min=0.0, lambda_max=1.0, method="magic")
