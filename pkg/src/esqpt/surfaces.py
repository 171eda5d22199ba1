"""Projective coherent states, condensate energies, and excited surfaces.

The intrinsic boson triple (condensate, beta mode, gamma mode) spans the
deformation-dependent single-particle states; excited potential surfaces are
exact finite-N expectation values of the Hamiltonian in states carrying
N_gamma quanta of the axial (d+2 d-2) pair on top of the condensate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import ModelParams, h_scaled

BETA_MAX = math.sqrt(2.0)


@dataclass(frozen=True)
class IntrinsicBosons:
    """Amplitude 6-vectors over (s, d_{-2}, d_{-1}, d_0, d_{+1}, d_{+2})."""

    beta: float
    gamma: float

    @property
    def condensate(self):
        b, g = self.beta, self.gamma
        return np.array(
            [
                math.sqrt(max(1.0 - b * b / 2.0, 0.0)),
                b * math.sin(g) / 2.0,
                0.0,
                b * math.cos(g) / math.sqrt(2.0),
                0.0,
                b * math.sin(g) / 2.0,
            ]
        )

    @property
    def beta_mode(self):
        b, g = self.beta, self.gamma
        s = math.sqrt(max(1.0 - b * b / 2.0, 0.0))
        return np.array(
            [
                -b / math.sqrt(2.0),
                s * math.sin(g) / math.sqrt(2.0),
                0.0,
                s * math.cos(g),
                0.0,
                s * math.sin(g) / math.sqrt(2.0),
            ]
        )

    @property
    def gamma_mode(self):
        g = self.gamma
        return np.array(
            [
                0.0,
                math.cos(g) / math.sqrt(2.0),
                0.0,
                -math.sin(g),
                0.0,
                math.cos(g) / math.sqrt(2.0),
            ]
        )


def _falling(n, k):
    out = 1.0
    for i in range(k):
        out *= n - i
    return out


def condensate_expectation(expr, amps, n_total):
    """<amps,N| expr |amps,N> for a normal-ordered expr and real amplitudes."""
    amps = np.asarray(amps, dtype=float)
    total = 0.0
    for (cs, ans), coeff in expr.terms.items():
        if len(cs) != len(ans):
            continue
        val = coeff.real * _falling(n_total, len(cs))
        for m in cs:
            val *= amps[m]
        for m in ans:
            val *= amps[m]
        total += val
    return total


def condensate_energy(params: ModelParams, N, beta, gamma=0.0):
    """Exact finite-N energy per boson pair of the condensate state."""
    if not 0.0 <= beta <= BETA_MAX:
        raise ValueError(f"beta out of range [0, sqrt(2)]: {beta}")
    amps = IntrinsicBosons(beta, gamma).condensate
    return condensate_expectation(h_scaled(params), amps, N) / (2.0 * N * N)


def _excited_value(terms, amps, n_cond, m_pair):
    """Expectation in (d+2 d-2 pair)^m x condensate over the (s, d0) modes."""
    total = 0.0
    for coeff, cs, ans in terms:
        # per-mode creator/annihilator counts
        c2 = cs.count(5)
        a2 = ans.count(5)
        c3 = cs.count(1)
        a3 = ans.count(1)
        if c2 != a2 or c3 != a3:
            continue
        if 2 in cs or 2 in ans or 4 in cs or 4 in ans:
            continue
        g1c = [m for m in cs if m in (0, 3)]
        g1a = [m for m in ans if m in (0, 3)]
        if len(g1c) != len(g1a):
            continue
        val = coeff * _falling(m_pair, c2) * _falling(m_pair, c3)
        val *= _falling(n_cond, len(g1c))
        for m in g1c:
            val *= amps[m]
        for m in g1a:
            val *= amps[m]
        total += val
    return total


def _real_terms(expr):
    out = []
    for (cs, ans), coeff in expr.terms.items():
        out.append((coeff.real, cs, ans))
    return out


def excited_energy(params: ModelParams, N, N_gamma, beta):
    """Excited surface value along the gamma = 0 cut.

    Expectation of H in the normalized state
    (d+_{+2} d+_{-2})^{N_gamma/2} (B+(beta, 0))^{N - N_gamma} |0>,
    evaluated by closed-form contraction rules for the two orthogonal mode
    families; N_gamma must be even (axial K = 0 selection).
    """
    if N_gamma % 2 != 0:
        raise ValueError("N_gamma must be even (K = 0 pair construction)")
    if N_gamma < 0 or N_gamma > N:
        raise ValueError("need 0 <= N_gamma <= N")
    if not 0.0 <= beta <= BETA_MAX:
        raise ValueError(f"beta out of range [0, sqrt(2)]: {beta}")
    amps = IntrinsicBosons(beta, 0.0).condensate
    terms = _real_terms(h_scaled(params))
    val = _excited_value(terms, amps, N - N_gamma, N_gamma // 2)
    return val / (2.0 * N * N)


@dataclass(frozen=True)
class SurfaceStationaryPoint:
    beta: float
    energy: float
    kind: str  # primary_min | secondary_min | max | stationary


def surface_stationary_points(params: ModelParams, N, N_gamma, n_grid=1500):
    """Stationary points of the excited surface V(beta) on [0, sqrt(2))."""
    betas = np.linspace(0.0, BETA_MAX - 1e-6, n_grid)
    v = np.array([excited_energy(params, N, N_gamma, b) for b in betas])
    dv = np.gradient(v, betas)
    pts = [(0.0, float(v[0]))]  # the origin is stationary by construction
    for i in range(1, n_grid - 2):
        if dv[i] == 0 or dv[i] * dv[i + 1] < 0:
            lo, hi = betas[i], betas[i + 1]
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                h = 1e-6
                dmid = (
                    excited_energy(params, N, N_gamma, mid + h)
                    - excited_energy(params, N, N_gamma, mid - h)
                ) / (2 * h)
                if dmid == 0:
                    break
                if dmid * dv[i] > 0:
                    lo = mid
                else:
                    hi = mid
            b = 0.5 * (lo + hi)
            if b > 0.02:
                pts.append((float(b), float(excited_energy(params, N, N_gamma, b))))
    # classify by the second derivative
    out = []
    h = 1e-4
    for b, e in pts:
        bl = max(b - h, 0.0)
        d2 = (
            excited_energy(params, N, N_gamma, b + h)
            - 2 * e
            + excited_energy(params, N, N_gamma, bl)
        ) / ((b + h - bl) / 2) ** 2
        out.append([b, e, "min" if d2 > 0 else "max"])
    minima = sorted((p for p in out if p[2] == "min"), key=lambda p: p[1])
    result = []
    for rank, p in enumerate(minima):
        kind = "primary_min" if rank == 0 else "secondary_min"
        result.append(SurfaceStationaryPoint(p[0], p[1], kind))
    for p in out:
        if p[2] == "max":
            result.append(SurfaceStationaryPoint(p[0], p[1], "max"))
    result.sort(key=lambda s: s.beta)
    return result


def phonon_ratio(lam):
    """Ratio of beta- to gamma-phonon energies near the deformed minimum."""
    return (2.0 * lam - 1.0) / 3.0
