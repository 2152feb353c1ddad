"""Discrete pseudo-differential operators on periodic grids.

The action realized here is the lattice form of
    T_a f(x) = (2pi)^(-d) sum_xi sum_y a(x, y, xi) e^{i<x-y, xi>} f(y) dy dxi,
with the unitary transforms of grid.py doing the y-sum whenever a has no y
dependence.  With a = 1 the composition collapses to idft(dft(f)), so the
identity is exact and pins every constant.

Adjoints are the exact conjugate transposes of the assembled action (matrix
free: the same sums run in reversed order), so the pairing
<T f, g> = <f, T* g> holds to rounding by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import PeriodicGrid, SampledFunction, dft, idft
from .littlewood_paley import LPFamily, make_lp_family
from .symbols import SymbolSpec

__all__ = [
    "OperatorInstance",
    "make_operator",
    "apply",
    "apply_dyadic_piece",
    "apply_adjoint",
    "commutator",
    "adjoint_commutator",
    "kernel_point_spectrum",
    "kernel_column",
    "kernel_row",
    "adjoint_kernel_row",
]

_CHUNK = 256
_CACHE_LIMIT = 2048  # cache the dense symbol matrix up to this many points


@dataclass(eq=False)
class OperatorInstance:
    """A symbol bound to a grid, a dyadic family, and an application mode.

    mode "full" applies the symbol on the whole lattice; mode "dyadic"
    truncates to frequency pieces 0..truncation (which must be fully resolved
    by the lattice).  Amplitude (y-dependent) application costs N^(3 dim) and
    is refused beyond the configured budget.
    """

    symbol: SymbolSpec
    grid: PeriodicGrid
    family: LPFamily
    mode: str = "full"
    truncation: int | None = None
    amplitude_budget: int = 512
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.mode not in ("full", "dyadic"):
            raise ValueError(f"mode must be 'full' or 'dyadic', got {self.mode!r}")
        if self.mode == "dyadic":
            if self.truncation is None:
                raise ValueError("dyadic mode requires a truncation index")
            if not 0 <= self.truncation <= self.family.max_index:
                raise ValueError(
                    f"truncation {self.truncation} outside 0..{self.family.max_index}"
                )
            if 2.0 ** (self.truncation + 1) > self.grid.xi_max:
                raise ValueError(
                    "grid Nyquist does not cover the truncated piece support"
                )

    # -- small shared pieces -------------------------------------------------

    def _mode_band(self) -> np.ndarray | None:
        if self.mode == "dyadic":
            return self.family.band_mask(self.truncation).ravel()
        return None

    def _check_grid(self, f: SampledFunction) -> None:
        if not f.grid.is_compatible(self.grid):
            raise ValueError("function grid does not match operator grid")

    def _xi_args(self, xis: np.ndarray):
        # component view of an (M, dim) frequency array, broadcast as (1, M)
        if self.grid.dim == 1:
            return xis[:, 0][None, :]
        return tuple(xis[:, a][None, :] for a in range(self.grid.dim))

    def _point_args(self, pts: np.ndarray):
        # component view of a (c, dim) point array, broadcast as (c, 1)
        if self.grid.dim == 1:
            return pts[:, 0][:, None]
        return tuple(pts[:, a][:, None] for a in range(self.grid.dim))

    def _scalar_args(self, pt):
        if self.grid.dim == 1:
            return float(np.atleast_1d(pt)[0])
        return tuple(float(v) for v in np.atleast_1d(pt))

    def _symbol_matrix(self) -> np.ndarray | None:
        """a(x_i, xi_m) * exp(i x_i.xi_m), dense, cached on small grids."""
        if self.grid.size > _CACHE_LIMIT:
            return None
        if "sym_matrix" not in self._cache:
            pts = self.grid.flat_points()
            xis = self.grid.flat_freqs()
            phase = np.exp(1j * pts @ xis.T)
            vals = np.asarray(
                self.symbol.evaluator(
                    self._point_args(pts), self._scalar_args(pts[0] * 0.0), self._xi_args(xis)
                ),
                dtype=np.complex128,
            )
            vals = np.broadcast_to(vals, phase.shape)
            self._cache["sym_matrix"] = vals * phase
        return self._cache["sym_matrix"]

    def _amplitude_allowed(self) -> None:
        cost = self.grid.n ** (3 * self.grid.dim)
        if cost > self.amplitude_budget**3:
            raise ValueError(
                f"amplitude mode cost n^(3 dim) = {cost} exceeds budget "
                f"{self.amplitude_budget}^3; use a coarser grid"
            )

    def _exp_matrix(self) -> np.ndarray:
        """exp(-i y_j xi_m) on the 1D lattice, cached."""
        if "exp_matrix" not in self._cache:
            yv = self.grid.axis_points()
            xiv = self.grid.axis_freqs()
            self._cache["exp_matrix"] = np.exp(-1j * np.outer(yv, xiv))
        return self._cache["exp_matrix"]


def make_operator(
    symbol: SymbolSpec,
    grid: PeriodicGrid,
    mode: str = "full",
    truncation: int | None = None,
    family: LPFamily | None = None,
    amplitude_budget: int = 512,
) -> OperatorInstance:
    fam = family if family is not None else make_lp_family(grid)
    return OperatorInstance(symbol, grid, fam, mode, truncation, amplitude_budget)


# ---------------------------------------------------------------------------
# Forward application.
# ---------------------------------------------------------------------------


def _apply_symbol_spectral(
    op: OperatorInstance, f: SampledFunction, band: np.ndarray | None
) -> SampledFunction:
    g = op.grid
    fhat = dft(f)
    if op.symbol.multiplier:
        xi = g.freq_coords()
        zero = 0.0 if g.dim == 1 else (0.0, 0.0)
        amp = np.asarray(op.symbol.evaluator(zero, zero, xi), dtype=np.complex128)
        amp = np.broadcast_to(amp, g.shape).copy()
        if band is not None:
            amp *= band.reshape(g.shape)
        return idft(SampledFunction(fhat.grid, fhat.values * amp))

    coef = fhat.values.ravel() * (g.freq_spacing**g.dim / (2.0 * np.pi) ** (g.dim / 2.0))
    if band is not None:
        coef = coef * band
    xis = g.flat_freqs()
    dense = op._symbol_matrix()
    if dense is not None:
        out_flat = dense @ coef
    else:
        pts = g.flat_points()
        out_flat = np.empty(g.size, dtype=np.complex128)
        zero = op._scalar_args(pts[0] * 0.0)
        xi_args = op._xi_args(xis)
        for i0 in range(0, g.size, _CHUNK):
            chunk = pts[i0 : i0 + _CHUNK]
            phase = np.exp(1j * chunk @ xis.T)
            vals = np.asarray(
                op.symbol.evaluator(op._point_args(chunk), zero, xi_args),
                dtype=np.complex128,
            )
            vals = np.broadcast_to(vals, phase.shape)
            out_flat[i0 : i0 + _CHUNK] = (vals * phase) @ coef
    return SampledFunction(g, out_flat.reshape(g.shape))


def _apply_amplitude(
    op: OperatorInstance, f: SampledFunction, band: np.ndarray | None
) -> SampledFunction:
    op._amplitude_allowed()
    g = op.grid
    xv = g.axis_points()
    xiv = g.axis_freqs()
    E = op._exp_matrix()
    fe = E * (f.values * g.spacing)[:, None]  # (y, m): e^{-i y xi} f(y) dy
    scale = g.freq_spacing / (2.0 * np.pi)
    out = np.empty(g.n, dtype=np.complex128)
    y_arg = xv[:, None]
    xi_arg = xiv[None, :]
    for i, x in enumerate(xv):
        amp = np.asarray(op.symbol.evaluator(x, y_arg, xi_arg), dtype=np.complex128)
        s = np.sum(np.broadcast_to(amp, fe.shape) * fe, axis=0)
        if band is not None:
            s = s * band
        out[i] = scale * np.sum(s * np.exp(1j * x * xiv))
    return SampledFunction(g, out)


def apply(op: OperatorInstance, f: SampledFunction) -> SampledFunction:
    """T_a f on the operator's grid."""
    op._check_grid(f)
    band = op._mode_band()
    if op.symbol.is_symbol:
        return _apply_symbol_spectral(op, f, band)
    return _apply_amplitude(op, f, band)


def apply_dyadic_piece(op: OperatorInstance, k: int, f: SampledFunction) -> SampledFunction:
    """Apply the frequency-localized piece T_{a phi_k}."""
    op._check_grid(f)
    if not 0 <= k <= op.family.max_index:
        raise ValueError(f"piece index {k} outside 0..{op.family.max_index}")
    band = op.family.piece_on_lattice(k).ravel()
    if op.symbol.is_symbol:
        return _apply_symbol_spectral(op, f, band)
    return _apply_amplitude(op, f, band)


# ---------------------------------------------------------------------------
# Adjoint application: conjugate transpose of the forward sums.
# ---------------------------------------------------------------------------


def _adjoint_symbol_spectral(
    op: OperatorInstance, u: SampledFunction, band: np.ndarray | None
) -> SampledFunction:
    g = op.grid
    if op.symbol.multiplier:
        uhat = dft(u)
        xi = g.freq_coords()
        zero = 0.0 if g.dim == 1 else (0.0, 0.0)
        amp = np.conj(
            np.asarray(op.symbol.evaluator(zero, zero, xi), dtype=np.complex128)
        )
        amp = np.broadcast_to(amp, g.shape).copy()
        if band is not None:
            amp *= band.reshape(g.shape)
        return idft(SampledFunction(uhat.grid, uhat.values * amp))

    xis = g.flat_freqs()
    uv = u.values.ravel() * g.cell_volume
    dense = op._symbol_matrix()
    if dense is not None:
        h = np.conj(dense.T @ np.conj(uv))
    else:
        pts = g.flat_points()
        h = np.zeros(g.size, dtype=np.complex128)
        zero = op._scalar_args(pts[0] * 0.0)
        xi_args = op._xi_args(xis)
        for i0 in range(0, g.size, _CHUNK):
            chunk = pts[i0 : i0 + _CHUNK]
            phase = np.exp(-1j * chunk @ xis.T)
            vals = np.conj(
                np.asarray(
                    op.symbol.evaluator(op._point_args(chunk), zero, xi_args),
                    dtype=np.complex128,
                )
            )
            vals = np.broadcast_to(vals, phase.shape)
            h += (vals * phase * uv[i0 : i0 + _CHUNK, None]).sum(axis=0)
    if band is not None:
        h = h * band
    synth = idft(SampledFunction(g.reciprocal(), h.reshape(g.shape)))
    scale = (2.0 * np.pi) ** (-g.dim / 2.0)
    return SampledFunction(g, synth.values * scale)


def _adjoint_amplitude(
    op: OperatorInstance, u: SampledFunction, band: np.ndarray | None
) -> SampledFunction:
    op._amplitude_allowed()
    g = op.grid
    xv = g.axis_points()
    xiv = g.axis_freqs()
    E = op._exp_matrix()
    ge = E * (u.values * g.spacing)[:, None]  # (x, m): e^{-i x xi} u(x) dx
    scale = g.freq_spacing / (2.0 * np.pi)
    out = np.empty(g.n, dtype=np.complex128)
    x_arg = xv[:, None]
    xi_arg = xiv[None, :]
    for j, y in enumerate(xv):
        amp = np.conj(
            np.asarray(op.symbol.evaluator(x_arg, y, xi_arg), dtype=np.complex128)
        )
        s = np.sum(np.broadcast_to(amp, ge.shape) * ge, axis=0)
        if band is not None:
            s = s * band
        out[j] = scale * np.sum(s * np.exp(1j * y * xiv))
    return SampledFunction(g, out)


def apply_adjoint(op: OperatorInstance, u: SampledFunction) -> SampledFunction:
    """T_a^* u, the exact discrete adjoint of apply."""
    op._check_grid(u)
    band = op._mode_band()
    if op.symbol.is_symbol:
        return _adjoint_symbol_spectral(op, u, band)
    return _adjoint_amplitude(op, u, band)


# ---------------------------------------------------------------------------
# Commutators with a multiplication operator.
# ---------------------------------------------------------------------------


def _check_real(b: SampledFunction) -> None:
    scale = max(1.0, float(np.max(np.abs(b.values))))
    if np.max(np.abs(b.values.imag)) > 1e-12 * scale:
        raise ValueError("commutator multiplier must be real-valued")


def commutator(op: OperatorInstance, b: SampledFunction, f: SampledFunction) -> SampledFunction:
    """[b, T_a] f = b (T_a f) - T_a (b f)."""
    _check_real(b)
    op._check_grid(f)
    return b * apply(op, f) - apply(op, b * f)


def adjoint_commutator(
    op: OperatorInstance, b: SampledFunction, u: SampledFunction
) -> SampledFunction:
    """[b, T_a^*] u = b (T_a^* u) - T_a^* (b u)."""
    _check_real(b)
    op._check_grid(u)
    return b * apply_adjoint(op, u) - apply_adjoint(op, b * u)


# ---------------------------------------------------------------------------
# Pointwise kernel access.  K(x, y) = (2pi)^(-d) sum_m a(x,y,xi_m)
# e^{i<x-y,xi_m>} dxi^d; x and y need not sit on the lattice.
# ---------------------------------------------------------------------------


def _diff(a, b) -> np.ndarray:
    return np.atleast_1d(np.asarray(a, dtype=float)) - np.atleast_1d(
        np.asarray(b, dtype=float)
    )


def kernel_point_spectrum(op: OperatorInstance, x_pt, y_pt) -> np.ndarray:
    """Per-mode kernel contributions at (x, y): dot with a band to integrate."""
    g = op.grid
    xis = g.flat_freqs()
    z = _diff(x_pt, y_pt)
    phase = np.exp(1j * (xis @ z))
    x_arg = op._scalar_args(x_pt)
    y_arg = op._scalar_args(y_pt)
    xi_flat = xis[:, 0] if g.dim == 1 else tuple(xis[:, a] for a in range(g.dim))
    vals = np.asarray(op.symbol.evaluator(x_arg, y_arg, xi_flat), dtype=np.complex128)
    vals = np.broadcast_to(vals, phase.shape)
    scale = g.freq_spacing**g.dim / (2.0 * np.pi) ** g.dim
    return vals * phase * scale


def _kernel_over_first_slot(op: OperatorInstance, fixed_pt, first: bool) -> np.ndarray:
    """K(z, x) for all lattice z (first=True) or K(x, y) for all y (False)."""
    g = op.grid
    xis = g.flat_freqs()
    pts = g.flat_points()
    fixed = np.atleast_1d(np.asarray(fixed_pt, dtype=float))
    scale = g.freq_spacing**g.dim / (2.0 * np.pi) ** g.dim
    band = op._mode_band()
    weight = np.full(g.size, scale) if band is None else band * scale
    out = np.empty(g.size, dtype=np.complex128)
    xi_args = op._xi_args(xis)
    fixed_arg = op._scalar_args(fixed_pt)
    sign = 1.0 if first else -1.0
    for i0 in range(0, g.size, _CHUNK):
        chunk = pts[i0 : i0 + _CHUNK]
        z = chunk - fixed[None, :]
        phase = np.exp(1j * sign * (z @ xis.T))
        if first:
            vals = op.symbol.evaluator(op._point_args(chunk), fixed_arg, xi_args)
        else:
            vals = op.symbol.evaluator(fixed_arg, op._point_args(chunk), xi_args)
        vals = np.broadcast_to(np.asarray(vals, dtype=np.complex128), phase.shape)
        out[i0 : i0 + _CHUNK] = (vals * phase) @ weight
    return out.reshape(g.shape)


def kernel_column(op: OperatorInstance, x_pt) -> np.ndarray:
    """K(., x): the kernel against its first argument, over the grid."""
    return _kernel_over_first_slot(op, x_pt, first=True)


def kernel_row(op: OperatorInstance, x_pt) -> np.ndarray:
    """K(x, .): the kernel against its second argument, over the grid."""
    return _kernel_over_first_slot(op, x_pt, first=False)


def adjoint_kernel_row(op: OperatorInstance, x_pt) -> np.ndarray:
    """K*(x, .) = conj(K(., x)): row of the adjoint's kernel."""
    return np.conj(kernel_column(op, x_pt))
