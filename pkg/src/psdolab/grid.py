"""Periodic grids, sampled functions, balls, and the discrete transform pair.

Everything downstream lives on a uniform grid over the box [-L, L)^dim with
N points per axis (N a power of two).  The matching frequency lattice is
xi = (pi/L) * m for integer m in [-N/2, N/2); it is itself the point set of a
periodic grid (the reciprocal grid), which is where spectra live.  The
transform pair is unitary, so the L2 norm taken with each grid's own measure
is preserved exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

__all__ = [
    "PeriodicGrid",
    "SampledFunction",
    "Ball",
    "BallFamily",
    "make_grid",
    "sample",
    "dft",
    "idft",
    "inner",
    "lp_norm",
    "ball_mask",
    "ball_indices",
    "annulus_mask",
    "ball_average",
    "ball_integral",
    "sweep_family",
]

MIN_POINTS_PER_BALL = 8


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform grid on [-L, L)^dim, L = half_length, N points per axis."""

    dim: int
    n: int
    half_length: float

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if not _is_power_of_two(self.n) or self.n < 64:
            raise ValueError(f"n must be a power of two >= 64, got {self.n}")
        if not self.half_length > 0:
            raise ValueError(f"half_length must be positive, got {self.half_length}")

    @property
    def spacing(self) -> float:
        # exact in floats: division of 2L by a power of two
        return 2.0 * self.half_length / self.n

    @property
    def freq_spacing(self) -> float:
        return np.pi / self.half_length

    @property
    def xi_max(self) -> float:
        """Magnitude of the unpaired lattice mode, pi*(N/2)/L."""
        return self.freq_spacing * (self.n // 2)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def size(self) -> int:
        return self.n**self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def axis_points(self) -> np.ndarray:
        return -self.half_length + self.spacing * np.arange(self.n)

    def axis_freqs(self) -> np.ndarray:
        return self.freq_spacing * (np.arange(self.n) - self.n // 2)

    def meshes(self) -> tuple[np.ndarray, ...]:
        ax = self.axis_points()
        return tuple(np.meshgrid(*([ax] * self.dim), indexing="ij"))

    def freq_meshes(self) -> tuple[np.ndarray, ...]:
        ax = self.axis_freqs()
        return tuple(np.meshgrid(*([ax] * self.dim), indexing="ij"))

    def coords(self):
        """Spatial coordinates: a single array in 1D, a tuple of arrays in 2D."""
        m = self.meshes()
        return m[0] if self.dim == 1 else m

    def freq_coords(self):
        m = self.freq_meshes()
        return m[0] if self.dim == 1 else m

    def freq_radius(self) -> np.ndarray:
        m = self.freq_meshes()
        return np.sqrt(sum(a**2 for a in m))

    def flat_points(self) -> np.ndarray:
        """All grid points as an (size, dim) array, row-major."""
        return np.stack([m.ravel() for m in self.meshes()], axis=-1)

    def flat_freqs(self) -> np.ndarray:
        return np.stack([m.ravel() for m in self.freq_meshes()], axis=-1)

    def reciprocal(self) -> "PeriodicGrid":
        """Grid whose point set is this grid's frequency lattice."""
        return PeriodicGrid(self.dim, self.n, self.n * self.freq_spacing / 2.0)

    def is_compatible(self, other: "PeriodicGrid") -> bool:
        return (
            self.dim == other.dim
            and self.n == other.n
            and abs(self.half_length - other.half_length) <= 1e-12 * self.half_length
        )

    def wrap(self, displacement: np.ndarray) -> np.ndarray:
        """Reduce displacements to the fundamental window [-L, L)."""
        two_l = 2.0 * self.half_length
        return (np.asarray(displacement) + self.half_length) % two_l - self.half_length


def make_grid(dim: int, n: int, half_length: float) -> PeriodicGrid:
    return PeriodicGrid(dim, n, float(half_length))


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Complex values sampled on a periodic grid."""

    grid: PeriodicGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != self.grid.shape:
            raise ValueError(f"values shape {vals.shape} != grid shape {self.grid.shape}")
        object.__setattr__(self, "values", vals)

    def is_real_nonnegative(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.values), initial=0.0)))
        return bool(
            np.max(np.abs(self.values.imag)) < tol * scale
            and np.min(self.values.real) >= 0.0
        )

    def real_values(self, tol: float = 1e-9) -> np.ndarray:
        scale = max(1.0, float(np.max(np.abs(self.values), initial=0.0)))
        if np.max(np.abs(self.values.imag)) > tol * scale:
            raise ValueError("values have a non-negligible imaginary part")
        return self.values.real

    def __add__(self, other: "SampledFunction") -> "SampledFunction":
        return SampledFunction(self.grid, self.values + other.values)

    def __sub__(self, other: "SampledFunction") -> "SampledFunction":
        return SampledFunction(self.grid, self.values - other.values)

    def __mul__(self, other):
        if isinstance(other, SampledFunction):
            return SampledFunction(self.grid, self.values * other.values)
        return SampledFunction(self.grid, self.values * other)

    __rmul__ = __mul__


def sample(grid: PeriodicGrid, fn: Callable) -> SampledFunction:
    """Evaluate fn on the grid; fn takes one array per axis."""
    return SampledFunction(grid, np.asarray(fn(*grid.meshes()), dtype=np.complex128))


# ---------------------------------------------------------------------------
# Transform pair.
#
# dft(f)(xi) = (2pi)^{-d/2} * sum_x f(x) e^{-i<x,xi>} dx^d  on the lattice,
# idft(g)(x) = (2pi)^{-d/2} * sum_xi g(xi) e^{+i<x,xi>} dxi^d.
# Implemented by FFT with fftshift bookkeeping; unitary w.r.t. each grid's
# own counting measure, so Parseval is exact up to roundoff.
# ---------------------------------------------------------------------------


def dft(f: SampledFunction) -> SampledFunction:
    g = f.grid
    axes = tuple(range(g.dim))
    spec = np.fft.fftshift(
        np.fft.fftn(np.fft.ifftshift(f.values, axes=axes), axes=axes), axes=axes
    )
    scale = g.cell_volume / (2.0 * np.pi) ** (g.dim / 2.0)
    return SampledFunction(g.reciprocal(), spec * scale)


def idft(f: SampledFunction) -> SampledFunction:
    g_out = f.grid.reciprocal()
    axes = tuple(range(f.grid.dim))
    vals = np.fft.fftshift(
        np.fft.ifftn(np.fft.ifftshift(f.values, axes=axes), axes=axes), axes=axes
    )
    scale = (2.0 * np.pi) ** (f.grid.dim / 2.0) / g_out.cell_volume
    return SampledFunction(g_out, vals * scale)


def inner(f: SampledFunction, g: SampledFunction) -> complex:
    """<f, g> = sum f * conj(g) * dx^d."""
    if not f.grid.is_compatible(g.grid):
        raise ValueError("inner product requires functions on the same grid")
    return complex(np.sum(f.values * np.conj(g.values)) * f.grid.cell_volume)


def _weight_values(w, grid: PeriodicGrid) -> np.ndarray:
    if w is None:
        return None
    if isinstance(w, SampledFunction):
        if not w.grid.is_compatible(grid):
            raise ValueError("weight grid does not match")
        wv = w.values.real if np.iscomplexobj(w.values) else w.values
        if np.iscomplexobj(w.values) and np.max(np.abs(w.values.imag)) > 1e-12 * max(
            1.0, float(np.max(np.abs(w.values)))
        ):
            raise ValueError("weight must be real-valued")
    else:
        wv = np.asarray(w, dtype=float)
        if wv.shape != grid.shape:
            raise ValueError("weight shape does not match grid")
    if np.min(wv) <= 0.0:
        raise ValueError("weight must be strictly positive")
    return wv


def lp_norm(f: SampledFunction, p: float, weight=None) -> float:
    """(sum |f|^p w dx^d)^(1/p); weight defaults to 1."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    wv = _weight_values(weight, f.grid)
    a = np.abs(f.values) ** p
    if wv is not None:
        a = a * wv
    return float(np.sum(a) * f.grid.cell_volume) ** (1.0 / p)


# ---------------------------------------------------------------------------
# Balls.  Membership uses periodic distance; the radius cap r <= L guarantees
# a ball never wraps onto itself.  Dilates and annuli are plain set algebra
# on grid indices, so dyadic annuli partition the dilated ball exactly.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ball:
    center: tuple[float, ...]
    radius: float

    def __post_init__(self) -> None:
        c = self.center
        if np.isscalar(c):
            c = (float(c),)
        object.__setattr__(self, "center", tuple(float(v) for v in np.atleast_1d(c)))
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    def dilate(self, factor: float) -> "Ball":
        return Ball(self.center, self.radius * factor)

    def fully_inside(self, grid: PeriodicGrid) -> bool:
        # strict: the box is [-L, L), so a closed ball touching +L wraps
        return all(abs(c) + self.radius < grid.half_length for c in self.center)


def ball_mask(grid: PeriodicGrid, ball: Ball) -> np.ndarray:
    if len(ball.center) != grid.dim:
        raise ValueError("ball center dimension does not match grid")
    if ball.radius > grid.half_length:
        raise ValueError(
            f"ball radius {ball.radius} exceeds half box {grid.half_length}"
        )
    meshes = grid.meshes()
    d2 = sum(grid.wrap(m - c) ** 2 for m, c in zip(meshes, ball.center))
    # tiny slack absorbs roundoff of the wrap for boundary lattice points
    return d2 <= (ball.radius * (1.0 + 1e-12)) ** 2


def ball_indices(grid: PeriodicGrid, ball: Ball) -> np.ndarray:
    return np.flatnonzero(ball_mask(grid, ball))


def annulus_mask(grid: PeriodicGrid, ball: Ball, j: int) -> np.ndarray:
    """S_j(B): the 2^j-dilate minus the 2^(j-1)-dilate; S_0(B) = B."""
    if j < 0:
        raise ValueError("annulus index must be >= 0")
    if j == 0:
        return ball_mask(grid, ball)
    outer = ball_mask(grid, ball.dilate(2.0**j))
    inner_ = ball_mask(grid, ball.dilate(2.0 ** (j - 1)))
    return outer & ~inner_


def _checked_ball_values(f: SampledFunction, ball: Ball) -> np.ndarray:
    mask = ball_mask(f.grid, ball)
    count = int(mask.sum())
    if count < MIN_POINTS_PER_BALL:
        raise ValueError(
            f"ball contains {count} grid points, needs >= {MIN_POINTS_PER_BALL}"
        )
    return f.values[mask]

def ball_average(f: SampledFunction, ball: Ball) -> complex:
    """Mean of f over the grid points inside the ball."""
    return complex(np.mean(_checked_ball_values(f, ball)))


def ball_integral(f: SampledFunction, ball: Ball) -> float:
    """Riemann sum of a real-valued f over the ball."""
    vals = _checked_ball_values(f, ball)
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.max(np.abs(vals.imag)) > 1e-9 * scale:
        raise ValueError("ball_integral expects real-valued samples")
    return float(np.sum(vals.real) * f.grid.cell_volume)


def ball_measure(grid: PeriodicGrid, ball: Ball) -> float:
    """Discrete |B|: point count times the cell volume."""
    return float(ball_mask(grid, ball).sum()) * grid.cell_volume


@dataclass(frozen=True)
class BallFamily:
    """Reproducible two-parameter sweep: lattice centers x dyadic radii."""

    balls: tuple[Ball, ...]
    descriptor: str

    def __iter__(self) -> Iterator[Ball]:
        return iter(self.balls)

    def __len__(self) -> int:
        return len(self.balls)

    def restricted(self, radius_cap: float) -> "BallFamily":
        kept = tuple(b for b in self.balls if b.radius <= radius_cap * (1 + 1e-12))
        return BallFamily(kept, f"{self.descriptor}|cap={radius_cap:g}")

    def radii(self) -> tuple[float, ...]:
        return tuple(sorted({b.radius for b in self.balls}))


def sweep_family(
    grid: PeriodicGrid,
    radius_cap: float | None = None,
    center_stride: int | None = None,
    min_radius: float | None = None,
    inside_only: bool = False,
) -> BallFamily:
    """Centers on a coarse sublattice, radii dyadic from 8*dx up to the cap.

    inside_only drops balls that would cross the box edge; use it whenever the
    sampled function models a non-periodic function of the line.
    """
    stride = center_stride if center_stride is not None else max(1, grid.n // 32)
    cap = radius_cap if radius_cap is not None else grid.half_length / 2.0
    r = min_radius if min_radius is not None else 8.0 * grid.spacing
    if cap > grid.half_length:
        raise ValueError("radius cap exceeds the half box")
    radii = []
    while r <= cap * (1 + 1e-12):
        radii.append(r)
        r *= 2.0
    if not radii:
        raise ValueError("radius cap below the minimum ball radius")
    ax = grid.axis_points()[::stride]
    if grid.dim == 1:
        centers = [(float(c),) for c in ax]
    else:
        centers = [(float(a), float(b)) for a in ax for b in ax]
    balls = []
    for c in centers:
        for rad in radii:
            b = Ball(c, rad)
            if inside_only and not b.fully_inside(grid):
                continue
            balls.append(b)
    tag = "inside" if inside_only else "torus"
    desc = (
        f"sweep(dim={grid.dim},n={grid.n},L={grid.half_length:g},"
        f"stride={stride},rmin={radii[0]:g},cap={cap:g},{tag})"
    )
    return BallFamily(tuple(balls), desc)
