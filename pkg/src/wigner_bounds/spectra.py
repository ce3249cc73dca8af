"""Extreme eigenvalues of region kernels, exact and discretized.

The eigenvalues of a disk kernel of radius a are known in closed
quadrature form,

    lambda_n(a) = (-1)^n Integral_0^{a^2} L_n(2u) e^{-u} du,  n >= 0,

with L_n the Laguerre polynomials; eigenvalue n belongs to the n-th
oscillator eigenfunction.  The largest is always lambda_0(a) and the
most negative scallops between consecutive odd-indexed curves as a
grows, so the sharp bounds on the disk integral of any Wigner function
come from scanning these curves.  Annulus eigenvalues are differences
of disk eigenvalues at the two radii with a shared eigenbasis.  For
regions without a closed form the discretized kernel from
kernels.assemble is diagonalized directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kernels import KernelMatrix
from .specfun import gauss_legendre, laguerre_poly
from .states import WavefunctionGrid

__all__ = [
    "SpectrumResult",
    "annulus_eigenvalue",
    "annulus_envelope",
    "crossing_radius",
    "disk_eigenvalue",
    "disk_envelope",
    "extremal_eigenvalues",
]


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """Extreme eigenvalues of a region kernel.

    method is "exact" (closed quadrature curves) or "nystrom"
    (discretized kernel).  n_min/n_max index the eigenvalue curves on
    the exact route; residual and the eigenvector grids belong to the
    discretized route.
    """

    lambda_min: float
    lambda_max: float
    method: str
    n_min: int | None = None
    n_max: int | None = None
    residual: float | None = None
    psi_min: WavefunctionGrid | None = None
    psi_max: WavefunctionGrid | None = None
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.method not in ("exact", "nystrom"):
            raise ValueError("method must be 'exact' or 'nystrom'")
        if not self.lambda_min <= self.lambda_max:
            raise ValueError("lambda_min exceeds lambda_max")
        object.__setattr__(self, "warnings", tuple(self.warnings))


def disk_eigenvalue(n: int, a: float) -> float:
    """lambda_n(a) for the centered disk of radius a."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if a < 0:
        raise ValueError("radius must be nonnegative")
    if a == 0.0:
        return 0.0
    rule = gauss_legendre(n + 32)
    u, w = rule.mapped(0.0, a * a)
    vals = laguerre_poly(n, 2.0 * u) * np.exp(-u)
    return float((-1) ** n * np.dot(w, vals))


def annulus_eigenvalue(n: int, r_inner: float, r_outer: float) -> float:
    """Eigenvalue n of the centered annulus kernel.

    The disk kernels at both radii share the oscillator eigenbasis, so
    this is exactly disk_eigenvalue(n, r_outer) - disk_eigenvalue(n, r_inner).
    """
    if not 0 <= r_inner < r_outer:
        raise ValueError("need 0 <= r_inner < r_outer")
    return disk_eigenvalue(n, r_outer) - disk_eigenvalue(n, r_inner)


def _envelope(values: np.ndarray) -> tuple[int, int, tuple[str, ...]]:
    # crossing radii carry exact degeneracies (a = 1 is even threefold,
    # lambda_1 = lambda_2 = lambda_4 there); break ties toward smaller n
    # through a tolerance well above quadrature noise
    n_min = int(np.argmax(values <= values.min() + 1e-12))
    n_max = int(np.argmax(values >= values.max() - 1e-12))
    notes = []
    if n_min == len(values) - 1 or n_max == len(values) - 1:
        notes.append("eigenvalue scan hit its cutoff at n = %d" % (len(values) - 1))
    return n_min, n_max, tuple(notes)


def disk_envelope(a: float, n_max: int | None = None) -> SpectrumResult:
    """Sharp bounds for a disk of radius a from the eigenvalue curves.

    Scans n up to n_max, defaulting to max(50, ceil(10 a^2)); the
    extremes of physical disks sit far below that, and a warning is
    attached if the scan ends on the cutoff.
    """
    if a < 0:
        raise ValueError("radius must be nonnegative")
    ncut = max(50, math.ceil(10.0 * a * a)) if n_max is None else n_max
    vals = np.array([disk_eigenvalue(n, a) for n in range(ncut + 1)])
    n_min, n_max, notes = _envelope(vals)
    return SpectrumResult(
        lambda_min=float(vals[n_min]),
        lambda_max=float(vals[n_max]),
        method="exact",
        n_min=n_min,
        n_max=n_max,
        warnings=notes,
    )


def annulus_envelope(
    r_inner: float, r_outer: float, n_max: int | None = None
) -> SpectrumResult:
    """Sharp bounds for a centered annulus; scans both envelope sides.

    Unlike the disk, the largest annulus eigenvalue need not be n = 0,
    so both extremes come from the same scan over n.
    """
    ncut = max(50, math.ceil(10.0 * r_outer * r_outer)) if n_max is None else n_max
    vals = np.array(
        [annulus_eigenvalue(n, r_inner, r_outer) for n in range(ncut + 1)]
    )
    n_min, n_max, notes = _envelope(vals)
    return SpectrumResult(
        lambda_min=float(vals[n_min]),
        lambda_max=float(vals[n_max]),
        method="exact",
        n_min=n_min,
        n_max=n_max,
        warnings=notes,
    )


def crossing_radius(n: int, tol: float = 1e-10) -> float:
    """Radius where eigenvalue curves n and n+1 cross, handing off the
    lower envelope of the disk spectrum.

    Scans (0, n+3] in steps of 0.01 for the last sign change of
    lambda_{n+1} - lambda_n, then bisects to tol.
    """
    if n < 1:
        raise ValueError("crossings are indexed from n = 1")

    def diff(a: float) -> float:
        return disk_eigenvalue(n + 1, a) - disk_eigenvalue(n, a)

    grid = np.arange(0.01, n + 3 + 1e-12, 0.01)
    vals = np.array([diff(a) for a in grid])
    signs = np.sign(vals)
    flips = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(flips) == 0:
        raise ValueError("no crossing of curves %d and %d below a = %g" % (n, n + 1, n + 3))
    lo, hi = grid[flips[-1]], grid[flips[-1] + 1]
    flo = diff(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        fmid = diff(mid)
        if flo * fmid <= 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return (lo + hi) / 2.0


def extremal_eigenvalues(km: KernelMatrix) -> SpectrumResult:
    """Extreme eigenvalues of a discretized kernel with eigenvectors.

    Eigenvectors come back as wavefunctions on the kernel grid,
    normalized so that sum |psi|^2 dx = 1; the residual is the larger of
    ||A v - lambda v||_2 over the two extremes.
    """
    a = km.a
    if np.max(np.abs(a - a.conj().T)) > 1e-10:
        raise ValueError("matrix must be Hermitian to 1e-10")
    w, v = np.linalg.eigh(a)
    vmin, vmax = v[:, 0], v[:, -1]
    res = max(
        float(np.linalg.norm(a @ vmin - w[0] * vmin)),
        float(np.linalg.norm(a @ vmax - w[-1] * vmax)),
    )
    scale = 1.0 / math.sqrt(km.dx)
    return SpectrumResult(
        lambda_min=float(w[0]),
        lambda_max=float(w[-1]),
        method="nystrom",
        residual=res,
        psi_min=WavefunctionGrid(km.x0, km.dx, vmin * scale),
        psi_max=WavefunctionGrid(km.x0, km.dx, vmax * scale),
        warnings=km.warnings,
    )
