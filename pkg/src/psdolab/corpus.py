"""Deterministic test-function corpora for the operator experiments.

Gaussian packets swept in center, width, and modulation.  The center sweep
deliberately pushes mass toward the box edge: growing weights are largest
there, so that is where a bad operator family first shows ratio drift.
Modulation counts frequency-lattice steps, keeping every factor exactly
periodic over the box.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import PeriodicGrid, SampledFunction

__all__ = [
    "CorpusItem",
    "gaussian_packet",
    "band_noise",
    "gaussian_corpus",
    "noise_corpus",
    "mixed_corpus",
]


@dataclass(frozen=True)
class CorpusItem:
    """One labeled test function with the parameters used to build it.

    Iterates as (label, fn, params) so corpora unpack directly in the
    ratio loops.  params carries "shift" whenever a translation-trend
    regression makes sense for the item.
    """

    label: str
    fn: SampledFunction
    params: dict = field(compare=False)

    def __iter__(self):
        yield self.label
        yield self.fn
        yield self.params


def gaussian_packet(
    grid: PeriodicGrid, center=0.0, width: float = 1.0, modulation: int = 0
) -> SampledFunction:
    """exp(-|x-c|^2 / (2 w^2)) e^{i q dxi x_1} with torus distance.

    Wrapping the displacement makes the sample exactly periodic; with
    centers a few widths short of the seam the tail mismatch there is
    negligible.  modulation q is an integer so the phase factor closes
    around the box.
    """
    width = float(width)
    if width <= 0:
        raise ValueError("width must be positive")
    c = np.broadcast_to(np.atleast_1d(np.asarray(center, dtype=float)), (grid.dim,))
    pts = grid.flat_points()
    disp = grid.wrap(pts - c)
    r2 = np.sum(disp * disp, axis=-1)
    vals = np.exp(-r2 / (2.0 * width * width)).astype(np.complex128)
    if modulation:
        lam = int(modulation) * grid.freq_spacing
        vals = vals * np.exp(1j * lam * pts[:, 0])
    return SampledFunction(grid, vals.reshape(grid.shape))


def band_noise(
    grid: PeriodicGrid, seed: int, modes: int = 8, amplitude: float = 1.0
) -> SampledFunction:
    """Seeded real trig polynomial with mode indices 1..modes, sup-normalized."""
    rng = np.random.default_rng(seed)
    base = grid.freq_spacing
    meshes = grid.meshes()
    u = np.zeros(grid.shape)
    for k in range(1, int(modes) + 1):
        for mesh in meshes:
            coef = rng.uniform(-1.0, 1.0)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            u = u + coef * np.cos(base * k * mesh + phase)
    sup = float(np.max(np.abs(u)))
    if sup > 0:
        u = u * (amplitude / sup)
    return SampledFunction(grid, u.astype(np.complex128))


def gaussian_corpus(
    grid: PeriodicGrid,
    centers=None,
    widths=(0.6, 1.0, 1.8),
    modulations=(0, 4, 12),
    center_count: int = 6,
) -> list[CorpusItem]:
    """Product corpus of Gaussian packets; the default is 54 items.

    Default centers run from 0.15 to 0.375 of the half length along the
    first axis: on a box of half length 16 that is 2.4 out to 6, where the
    widest tail meets the seam below 3e-7.  The sweep starts off the
    origin on purpose: power weights have a cusp there, and packets
    straddling the cusp carry an offset that reads as a spurious trend
    when the statistic of interest is growth toward the box edge.
    """
    if centers is None:
        centers = np.linspace(
            0.15 * grid.half_length, 0.375 * grid.half_length, int(center_count)
        )
    items = []
    for c in np.atleast_1d(np.asarray(centers, dtype=float)):
        for w in widths:
            for q in modulations:
                fn = gaussian_packet(grid, center=c, width=w, modulation=q)
                label = f"gauss(c={c:g},w={w:g},q={int(q)})"
                items.append(
                    CorpusItem(
                        label,
                        fn,
                        {
                            "center": float(c),
                            "width": float(w),
                            "modulation": int(q),
                            "shift": float(c),
                        },
                    )
                )
    return items


def noise_corpus(
    grid: PeriodicGrid, count: int, seed: int, modes: int = 8
) -> list[CorpusItem]:
    """count independent band_noise draws, seeds split from the given seed."""
    seeds = np.random.SeedSequence(seed).generate_state(int(count))
    items = []
    for i, s in enumerate(seeds):
        fn = band_noise(grid, int(s), modes=modes)
        items.append(CorpusItem(f"noise({i})", fn, {"seed": int(s), "index": i}))
    return items


def mixed_corpus(grid: PeriodicGrid, count: int = 30, seed: int = 0) -> list[CorpusItem]:
    """Gaussians plus noise, count items total, Gaussians first."""
    n_noise = max(1, count // 3)
    n_gauss = count - n_noise
    per = max(1, int(np.ceil(n_gauss / 3)))
    top = 0.375 * grid.half_length
    centers = np.linspace(0.0, top, per)
    gauss = gaussian_corpus(
        grid, centers=centers, widths=(0.7, 1.4, 2.4)[: min(3, n_gauss)], modulations=(0,)
    )[:n_gauss]
    return gauss + noise_corpus(grid, n_noise, seed)
