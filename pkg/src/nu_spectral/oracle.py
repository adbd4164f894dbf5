"""Independent numerical cross-checks: finite-difference spectra and
adaptive quadrature.

The eigenvalue oracle discretizes -psi'' + v(x) psi = eps psi with the
standard three-point stencil on a uniform grid, Dirichlet walls at the box
edges, and solves the symmetric tridiagonal problem by LAPACK bisection
(scipy.linalg.eigvalsh_tridiagonal).  Raw eigenvalues carry an O(h^2)
discretization bias, so the oracle always solves on the requested grid and
on a coarsened companion and Richardson-extrapolates the pair; the
difference between the two runs doubles as an error estimate and trips
GridTooCoarse when it exceeds the caller's tolerance.

Quadrature: scipy.integrate.quad for smooth (possibly infinite-range)
integrands, plus a tanh-sinh rule for weights with endpoint exponents in
(-1, 0), where the integrand must be evaluated with exact distances to the
endpoints rather than through a rounded abscissa.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate
from scipy.linalg import eigvalsh_tridiagonal

from .errors import CountMismatch, GridTooCoarse, NoConvergence

DEFAULT_QUAD_TOL = 1e-11
DEFAULT_GRID_RTOL = 1e-3


@dataclass(frozen=True)
class FdGrid:
    lo: float
    hi: float
    n: int  # grid points including both walls

    def __post_init__(self):
        if self.n < 9:
            raise ValueError("grid needs at least 9 points")
        if not self.lo < self.hi:
            raise ValueError("grid endpoints out of order")

    @property
    def h(self):
        return (self.hi - self.lo) / (self.n - 1)

    def coarsened(self):
        """Companion grid with (close to) twice the spacing."""
        return FdGrid(self.lo, self.hi, (self.n - 1) // 2 + 1)


@dataclass(frozen=True)
class OracleSpectrum:
    eigenvalues: tuple  # Richardson-extrapolated, below threshold
    raw_fine: tuple
    raw_coarse: tuple
    error_estimates: tuple
    grid: FdGrid
    threshold: float


@dataclass(frozen=True)
class SpectraReport:
    analytic: tuple
    oracle: tuple
    rel_errors: tuple
    rel_tol: float
    ok: bool


def _solve_grid(v, grid, threshold, k_max):
    x = np.linspace(grid.lo, grid.hi, grid.n)
    h = x[1] - x[0]
    xi = x[1:-1]
    vi = np.asarray(v(xi), dtype=float)
    d = 2.0 / h**2 + vi
    e = np.full(len(xi) - 1, -1.0 / h**2)
    if math.isfinite(threshold):
        lo_ev = float(d.min()) - 2.0 / h**2 - 1.0
        w = eigvalsh_tridiagonal(d, e, select="v", select_range=(lo_ev, threshold))
    else:
        top = min(k_max + 3, len(xi) - 1)
        w = eigvalsh_tridiagonal(d, e, select="i", select_range=(0, top))
    return np.sort(w)


def fd_bound_states(v, grid, threshold=math.inf, k_max=None, rtol=DEFAULT_GRID_RTOL):
    """Bound-state energies of -psi'' + v psi = eps psi inside the box.

    v must accept a numpy array of positions.  threshold bounds the
    spectrum from above (energies at or above it belong to the continuum
    and are discarded); with an infinite threshold k_max picks how many
    low-lying states to return.  Raises GridTooCoarse when the fine and
    coarsened runs disagree beyond rtol after extrapolation.
    """
    if not math.isfinite(threshold) and k_max is None:
        raise ValueError("k_max is required when threshold is infinite")
    fine = _solve_grid(v, grid, threshold, k_max)
    coarse_grid = grid.coarsened()
    coarse = _solve_grid(v, coarse_grid, threshold, k_max)
    r = (coarse_grid.h / grid.h) ** 2
    m = min(len(fine), len(coarse))
    extr, errs, rf, rc = [], [], [], []
    for i in range(m):
        ei = (r * fine[i] - coarse[i]) / (r - 1.0)
        est = abs(fine[i] - coarse[i]) / (r - 1.0)
        if ei >= threshold:
            continue
        extr.append(float(ei))
        errs.append(float(est))
        rf.append(float(fine[i]))
        rc.append(float(coarse[i]))
    if k_max is not None:
        extr, errs = extr[:k_max], errs[:k_max]
        rf, rc = rf[:k_max], rc[:k_max]
    for ei, est in zip(extr, errs):
        if est > rtol * max(1.0, abs(ei)):
            raise GridTooCoarse(
                f"fine/coarse grids disagree by {est:.2e} at eigenvalue {ei:.6g} "
                f"(tolerance {rtol:.1e}); refine the grid"
            )
    return OracleSpectrum(
        tuple(extr), tuple(rf), tuple(rc), tuple(errs), grid, threshold
    )


def fd_convergence_ratio(v, grid, threshold=math.inf, state=0):
    """Eigenvalue-difference ratio across three dyadic grids.

    For an O(h^2) stencil the ratio (e_4h - e_2h)/(e_2h - e_h) approaches 4;
    values far from 4 flag an implementation or resolution problem.
    """
    if (grid.n - 1) % 4:
        raise ValueError("need n-1 divisible by 4 for three dyadic grids")
    g1 = grid
    g2 = grid.coarsened()
    g4 = g2.coarsened()
    k = state + 1
    e1 = _solve_grid(v, g1, threshold, k)[state]
    e2 = _solve_grid(v, g2, threshold, k)[state]
    e4 = _solve_grid(v, g4, threshold, k)[state]
    denom = e2 - e1
    if denom == 0:
        raise GridTooCoarse("eigenvalues identical across grids; cannot estimate order")
    return float((e4 - e2) / denom)


def compare_spectra(analytic, oracle, rel_tol):
    """Pair analytic and oracle energies; CountMismatch if lengths differ."""
    analytic = tuple(float(a) for a in analytic)
    ov = oracle.eigenvalues if isinstance(oracle, OracleSpectrum) else tuple(oracle)
    if len(analytic) != len(ov):
        raise CountMismatch(
            f"analytic spectrum has {len(analytic)} levels, oracle has {len(ov)}"
        )
    rel = tuple(
        abs(a - o) / max(1.0, abs(a)) for a, o in zip(analytic, ov)
    )
    ok = all(r <= rel_tol for r in rel)
    return SpectraReport(analytic, tuple(ov), rel, rel_tol, ok)


# ---------------------------------------------------------------------------
# quadrature


def quad_adaptive(f, lo, hi, tol=DEFAULT_QUAD_TOL, abs_tol=None):
    """Adaptive quadrature of a smooth integrand; NoConvergence on failure.

    tol bounds the relative error; abs_tol (defaulting to tol) sets the
    absolute floor.  Pass a larger abs_tol when the integrand's lobes dwarf
    the cancelled result, where a fixed absolute request would exceed what
    double precision can deliver.
    """
    epsabs = tol if abs_tol is None else abs_tol
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=tol, limit=200)
        except integrate.IntegrationWarning as exc:
            raise NoConvergence(f"adaptive quadrature failed: {exc}") from exc
    if err > 1e3 * max(epsabs, abs(val) * tol):
        raise NoConvergence(
            f"quadrature error estimate {err:.2e} exceeds tolerance {tol:.1e}"
        )
    return val


def tanh_sinh(g, a, b, tol=1e-12, max_level=10):
    """Tanh-sinh quadrature on (a, b) for endpoint-singular integrands.

    g is called as g(x, d_lo, d_hi) where d_lo = x - a and d_hi = b - x are
    computed to full relative precision even when they underflow the
    spacing of floats near the endpoints; integrable endpoint blow-ups
    (power exponents > -1) must use the distances, not x itself.
    """
    rad = 0.5 * (b - a)
    t_max = 6.0

    def sample(t):
        u = 0.5 * math.pi * math.sinh(t)
        q = math.exp(-2.0 * abs(u))
        near = rad * 2.0 * q / (1.0 + q)  # distance to the nearer endpoint
        far = (b - a) - near
        if u >= 0:
            d_lo, d_hi = far, near
            x = b - near
        else:
            d_lo, d_hi = near, far
            x = a + near
        w = 0.5 * math.pi * math.cosh(t) * rad * 4.0 * q / (1.0 + q) ** 2
        if w == 0.0:
            return 0.0
        return w * g(x, d_lo, d_hi)

    h = 1.0
    total = h * sum(sample(j * h) for j in range(-int(t_max), int(t_max) + 1))
    for level in range(1, max_level + 1):
        h *= 0.5
        j_top = int(t_max / h)
        j_start = -j_top if j_top % 2 else -j_top + 1  # odd multiples only
        add = sum(sample(j * h) for j in range(j_start, j_top + 1, 2))
        new_total = 0.5 * total + h * add
        if level >= 3 and abs(new_total - total) <= tol * max(1.0, abs(new_total)):
            return new_total
        total = new_total
    raise NoConvergence("tanh-sinh rule did not settle within the level budget")
