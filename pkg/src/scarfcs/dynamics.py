"""Space-time probability densities (quantum carpets) and exports.

A carpet is |Psi(x, t)|^2 with Psi = sum_n c_n exp(-i E_n t) psi_n(x),
the c_n coming straight from a CoherentExpansion. Because E_n is
quadratic in n the pattern revives at t = 2 pi for integer alpha, which
is why the default time window is exactly one revival.

Unitarity bookkeeping: slice_norms integrate |Psi|^2 over the full open
interval with a 400-node Gauss-Legendre rule and must sit at 1 to high
accuracy; grid_norms are trapezoid sums over the display window only
and fall short by the probability mass outside the margin band (at
beta close to alpha - 1 the right wall is soft and that mass is real,
about 1.4e-3 at the default margin for alpha = 12, beta = 10.9).
"""

import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from . import coherent, kernels, quadrature, scarf
from .errors import DomainError, UnitarityError

TWO_PI = 2.0 * math.pi

NORM_ORDER = 400        # GL order for the unitarity check
HARD_NORM_TOL = 1e-4    # |slice norm - 1| beyond this is a bug
GRID_CROSS_TOL = 0.02   # |grid norm - slice norm| beyond this is a bug


@dataclass(frozen=True)
class GridSpec:
    """Uniform display grid: x strictly interior with a wall margin,
    t from 0 to t_max inclusive."""

    x_points: int = 200
    t_points: int = 200
    t_max: float = TWO_PI
    margin: float = 0.05

    def __post_init__(self):
        if self.x_points < 2 or self.t_points < 2:
            raise DomainError("grids need at least 2 points per axis")
        if not 0.0 < self.margin < quadrature.HALF_PI:
            raise DomainError("margin must lie in (0, pi/2)")
        if not self.t_max > 0.0:
            raise DomainError("t_max must be positive")

    @property
    def x(self):
        return np.linspace(-quadrature.HALF_PI + self.margin,
                           quadrature.HALF_PI - self.margin,
                           int(self.x_points))

    @property
    def t(self):
        return np.linspace(0.0, float(self.t_max), int(self.t_points))

    @property
    def trapezoid_weights(self):
        h = (math.pi - 2.0 * self.margin) / (int(self.x_points) - 1)
        w = np.full(int(self.x_points), h)
        w[0] = w[-1] = 0.5 * h
        return w


@dataclass(frozen=True)
class CarpetField:
    """density[i, j] = |Psi(x_j, t_i)|^2 plus its audit trail.

    slice_norms: full-interval Gauss-Legendre norm per time slice (the
    unitarity check, 1 to ~1e-13 for a well-truncated expansion).
    grid_norms: trapezoid sum over the display window, kept as a
    diagnostic of how much probability the window misses.
    """

    density: np.ndarray
    grid: GridSpec
    slice_norms: np.ndarray
    grid_norms: np.ndarray
    meta: dict


def evolve(model, params, expansion, x, t):
    """Amplitude Psi(x, t) for one time; x scalar or array."""
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    psi = scarf.eigenfunction_table(model, params, expansion.n_max, arr)
    levels = np.arange(expansion.n_max + 1)
    energies = (levels + params.alpha) ** 2
    phases = np.exp(-1j * energies * float(t))
    vals = (expansion.coefficients * phases) @ psi
    return complex(vals[0]) if np.ndim(x) == 0 else vals


def carpet(model, spec, params, zeta, grid=None, n_max=20):
    """Evolve |zeta> over one grid and return the audited density field.

    The expansion is model-independent; only the eigenfunction tables
    differ between the conventional and rational wells. Pass
    n_max=None to let the truncation policy choose the cut.
    """
    if grid is None:
        grid = GridSpec()
    policy = coherent.TruncationPolicy(n_max=n_max)
    exp_ = coherent.expansion(spec, params, zeta, policy)
    levels = np.arange(exp_.n_max + 1)
    energies = (levels + params.alpha) ** 2
    times = grid.t

    psi_grid = scarf.eigenfunction_table(model, params, exp_.n_max, grid.x)
    density = kernels.carpet_densities(exp_.coefficients, energies,
                                       psi_grid, times)

    rule = quadrature.gauss_legendre(NORM_ORDER)
    psi_rule = scarf.eigenfunction_table(model, params, exp_.n_max,
                                         rule.nodes)
    dens_rule = kernels.carpet_densities(exp_.coefficients, energies,
                                         psi_rule, times)
    slice_norms = dens_rule @ rule.weights
    grid_norms = density @ grid.trapezoid_weights

    worst = int(np.argmax(np.abs(slice_norms - 1.0)))
    if abs(slice_norms[worst] - 1.0) > HARD_NORM_TOL:
        raise UnitarityError(
            f"slice norm {slice_norms[worst]:.8f} at t = {times[worst]:.6f} "
            f"(expansion tail bound {exp_.tail_bound:.3e}); raise n_max")
    if np.max(np.abs(grid_norms - slice_norms)) > GRID_CROSS_TOL:
        raise UnitarityError(
            "display-window norms disagree grossly with the full-interval "
            "norms; the margin band is swallowing real structure")

    for arr in (density, slice_norms, grid_norms):
        arr.flags.writeable = False
    meta = {
        "model": model.value,
        "gcs": int(spec.kind),
        "alpha": params.alpha,
        "beta": params.beta,
        "sigma": spec.sigma,
        "zeta_abs": zeta.modulus,
        "zeta_phase": zeta.phase,
        "alpha_tilde": spec.alpha_tilde,
        "n_max": exp_.n_max,
        "t_max": float(grid.t_max),
        "margin": float(grid.margin),
    }
    return CarpetField(density=density, grid=grid, slice_norms=slice_norms,
                       grid_norms=grid_norms, meta=meta)


def _render_csv(field):
    # repr() round-trips float64 exactly, so the CSV is lossless
    xs = [repr(float(v)) for v in field.grid.x]
    lines = ["t," + ",".join(xs)]
    for t_i, row in zip(field.grid.t, field.density):
        lines.append(repr(float(t_i)) + ","
                     + ",".join(repr(float(v)) for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def _render_pgm(field):
    d = field.density
    peak = float(d.max())
    pix = np.zeros(d.shape, dtype=">u2")
    if peak > 0.0:
        pix = np.floor(d * (65535.0 / peak) + 0.5).astype(">u2")
    comment = "# " + " ".join(
        f"{k}={v}" for k, v in sorted(field.meta.items()))
    header = f"P5\n{comment}\n{d.shape[1]} {d.shape[0]}\n65535\n"
    return header.encode("ascii") + pix.tobytes()


def export_carpet(field, fmt, destination):
    """Write the density as lossless CSV or 16-bit big-endian PGM (P5).

    Writes to a temp file in the destination directory and renames into
    place, so a failed export leaves nothing behind.
    """
    fmt = str(fmt).lower()
    if fmt not in ("csv", "pgm"):
        raise DomainError(f"unknown export format {fmt!r}")
    dest = os.fspath(destination)
    if not dest:
        raise OSError("export destination path is empty")
    payload = _render_csv(field) if fmt == "csv" else _render_pgm(field)
    directory = os.path.dirname(dest) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".carpet-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, dest)
    except BaseException:
        try:
            os.remove(tmp)
        except FileNotFoundError:
            pass
        raise
    return dest
