"""Smoothed semiclassical level density by Monte-Carlo phase-space sampling.

The density of classical energy values under the uniform measure on the
4-ball equals (up to normalization) the smoothed quantum level density; we
normalize so that the integral over the support reproduces the L=0 state
count at a configured reference boson number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import gaussian_filter1d

from .classical import R0_SQUARED, eval_H_array
from .models import ModelParams
from .quantum import SpectrumResult, basis_dimension

DEFAULT_BINS = 300
DEFAULT_E_RANGE = (-0.05, 3.05)
DEFAULT_REF_N = 50


@dataclass
class DensityGrid:
    e_edges: np.ndarray
    rho: np.ndarray
    mc_error: np.ndarray
    n_samples: int
    seed: int
    params: ModelParams
    ref_N: int
    drho_dE: np.ndarray | None = None
    drho_error: np.ndarray | None = None

    @property
    def e_centers(self):
        return 0.5 * (self.e_edges[:-1] + self.e_edges[1:])

    @property
    def binwidth(self):
        return float(self.e_edges[1] - self.e_edges[0])


def _sample_ball(rng, n):
    """Uniform points in the 4-ball of radius sqrt(2)."""
    v = rng.standard_normal((n, 4))
    v /= np.linalg.norm(v, axis=1)[:, None]
    r = math.sqrt(R0_SQUARED) * rng.random(n) ** 0.25
    return v * r[:, None]


def mc_density(
    params: ModelParams,
    n_samples=1_000_000,
    seed=0,
    bins=DEFAULT_BINS,
    e_range=DEFAULT_E_RANGE,
    ref_N=DEFAULT_REF_N,
    shards=1,
    batch=2_000_000,
) -> DensityGrid:
    """Monte-Carlo smoothed level density on the classical energy scale."""
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    edges = np.linspace(e_range[0], e_range[1], bins + 1)
    counts = np.zeros(bins, dtype=np.int64)
    children = np.random.SeedSequence(seed).spawn(shards)
    per_shard = [n_samples // shards] * shards
    per_shard[0] += n_samples - sum(per_shard)
    for ss, m in zip(children, per_shard):
        rng = np.random.default_rng(ss)
        left = m
        while left > 0:
            take = min(left, batch)
            pts = _sample_ball(rng, take)
            e = eval_H_array(params, pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3])
            counts += np.histogram(e, bins=edges)[0]
            left -= take
    dim = basis_dimension(ref_N)
    width = edges[1] - edges[0]
    p = counts / n_samples
    rho = dim * p / width
    err = dim * np.sqrt(np.maximum(p * (1 - p), 1.0 / n_samples**2) / n_samples) / width
    return DensityGrid(edges, rho, err, int(n_samples), int(seed), params, int(ref_N))


def density_derivative(grid: DensityGrid, presmooth_bins=2.0):
    """Central-difference d rho / dE with optional Gaussian pre-smoothing."""
    rho = grid.rho
    err = grid.mc_error
    if presmooth_bins and presmooth_bins > 0:
        rho = gaussian_filter1d(rho, presmooth_bins, mode="nearest")
        # variance shrinks by the sum of squared kernel weights
        kernel = _gauss_kernel(presmooth_bins)
        shrink = math.sqrt(float(np.sum(kernel**2)))
        err = gaussian_filter1d(err, presmooth_bins, mode="nearest") * shrink
    w = grid.binwidth
    d = np.gradient(rho, w)
    derr = np.sqrt(np.roll(err, -1) ** 2 + np.roll(err, 1) ** 2) / (2 * w)
    derr[0] = derr[1]
    derr[-1] = derr[-2]
    grid.drho_dE = d
    grid.drho_error = derr
    return d


def _gauss_kernel(sigma):
    half = int(4 * sigma + 0.5)
    x = np.arange(-half, half + 1)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


@dataclass(frozen=True)
class DensityFeature:
    e_center: float
    kind: str  # jump_up | jump_down | spike_up | spike_down
    strength: float  # detection statistic in units of its standard error


def detect_singularities(grid: DensityGrid, n_sigma=5.0, window=6):
    """Statistically significant non-analytic features of d rho / dE.

    A windowed curvature statistic C[i] = d[i+w] - 2 d[i] + d[i-w] cancels
    smooth linear trends while responding to both derivative jumps (step of
    height h gives |C| ~ h) and log-type spikes (|C| ~ twice the peak excess
    over the flanks).  Bins where |C| exceeds n_sigma times its propagated
    Monte-Carlo error are merged into features, localized at the steepest or
    highest bin, and typed by comparing the core against flanking baselines.
    """
    if grid.drho_dE is None:
        density_derivative(grid)
    d = grid.drho_dE
    err = grid.drho_error
    centers = grid.e_centers
    n = len(d)
    w = int(window)
    # only look inside the sampled support (slightly expanded); smoothing
    # leakage outside the support has artificially tiny errors
    inside = grid.rho > 0
    support = np.zeros(n, dtype=bool)
    idx = np.where(inside)[0]
    if idx.size == 0:
        return []
    support[max(idx[0] - 1, 0) : min(idx[-1] + 2, n)] = True
    err_floor = float(np.median(err[inside]))
    eff_err = np.maximum(err, err_floor)
    curv = np.zeros(n)
    curv[w:-w] = d[2 * w :] - 2 * d[w:-w] + d[: -2 * w]
    cerr = np.sqrt(6.0) * eff_err
    stat = np.where(support, np.abs(curv) / cerr, 0.0)
    stat[:w] = 0.0
    stat[-w:] = 0.0
    hot = stat > n_sigma
    feats = []
    i = 0
    while i < n:
        if not hot[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and (hot[j + 1] or (hot[min(j + w, n - 1)] and j - i < 6 * w)):
            j += 1
        peak = i + int(np.argmax(stat[i : j + 1]))
        lo = slice(max(0, peak - 3 * w), max(1, peak - w))
        hi = slice(min(n - 1, peak + w + 1), min(n, peak + 3 * w + 1))
        left = float(np.median(d[lo])) if d[lo].size else d[peak]
        right = float(np.median(d[hi])) if d[hi].size else d[peak]
        core = float(d[peak])
        base = 0.5 * (left + right)
        if abs(core - base) > abs(right - left):
            kind = "spike_up" if core > base else "spike_down"
            loc = peak
        else:
            kind = "jump_up" if right > left else "jump_down"
            # a smeared step is steepest at its center
            seg = slice(max(peak - w, 1), min(peak + w, n))
            steps = np.abs(np.diff(d[seg]))
            loc = seg.start + int(np.argmax(steps))
        feats.append(DensityFeature(float(centers[loc]), kind, float(stat[peak])))
        i = j + 1
    # merge detections closer than one window (e.g. the recovery flank of a
    # strong spike re-triggering); keep the strongest
    feats.sort(key=lambda f: -f.strength)
    merged = []
    for f in feats:
        if all(abs(f.e_center - g2.e_center) > w * grid.binwidth for g2 in merged):
            merged.append(f)
    merged.sort(key=lambda f: f.e_center)
    return merged


def phase_diagram(
    beta0p, lambda_grid, e_bins=DEFAULT_BINS, n_samples=200_000, seed=0, ref_N=DEFAULT_REF_N
):
    """Matrix of d rho / dE over (lambda, E); one MC density per lambda."""
    lambda_grid = np.asarray(lambda_grid, dtype=float)
    out = np.zeros((len(lambda_grid), e_bins))
    grids = []
    for i, lam in enumerate(lambda_grid):
        g = mc_density(
            ModelParams(beta0p, lam), n_samples=n_samples, seed=seed + i, bins=e_bins,
            ref_N=ref_N,
        )
        out[i] = density_derivative(g)
        grids.append(g)
    return out, grids


@dataclass
class FlowGrid:
    e_centers: np.ndarray
    rho: np.ndarray  # smoothed quantum level density
    jbar: np.ndarray  # smoothed level flow
    phibar: np.ndarray  # velocity field jbar / rho


def gaussian_spectral_density(energies, centers, width, weights=None):
    """Sum of unit-area Gaussians at `energies`, optionally weighted."""
    if weights is None:
        weights = np.ones_like(energies)
    out = np.zeros_like(centers, dtype=float)
    norm = 1.0 / (width * math.sqrt(2 * math.pi))
    for e, w in zip(energies, weights):
        out += w * norm * np.exp(-0.5 * ((centers - e) / width) ** 2)
    return out


def smoothed_flow(spectra, width=0.05, bins=DEFAULT_BINS, e_range=DEFAULT_E_RANGE):
    """Smoothed level flow from one or more spectra at nearby lambda.

    The flow field is built from Hellmann-Feynman slopes of the central
    spectrum; the density from its level positions, both on the classical
    energy scale.
    """
    if isinstance(spectra, SpectrumResult):
        spectra = [spectra]
    ns = {s.N for s in spectra}
    if len(ns) != 1:
        raise ValueError("all spectra must share the same N")
    mid = spectra[len(spectra) // 2]
    edges = np.linspace(e_range[0], e_range[1], bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    rho = gaussian_spectral_density(mid.epsilon, centers, width)
    jbar = gaussian_spectral_density(mid.epsilon, centers, width, weights=mid.epsilon_slopes)
    phibar = np.where(rho > 1e-10, jbar / np.maximum(rho, 1e-300), 0.0)
    return FlowGrid(centers, rho, jbar, phibar)
