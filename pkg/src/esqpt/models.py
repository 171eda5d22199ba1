"""Model Hamiltonian family on the s/d boson space.

Defines the interpolating Hamiltonian H(lambda, beta0p) built from the pair
operators

    D+_mu = sqrt(2) beta0p [s+ d+]^(2)_mu + sqrt(7) zeta [d+ d+]^(2)_mu
    S+    = d+.d+ - beta0p^2 s+ s+

with the single control parameter lambda: zeta = lambda on [0, 1] (xi = 0),
xi = lambda - 1 for lambda >= 1 (zeta = 1).  Operators are returned as
BosonExpr instances scaled by N (i.e. they represent N * H), so the quantum
Hamiltonian is the returned expression divided by N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    BosonExpr,
    TensorOp,
    couple,
    d_creator_tensor,
    d_mode,
    scalar_product,
)

LAMBDA_CRITICAL = 1.0


@dataclass(frozen=True)
class ModelParams:
    """Control parameters of the interpolating Hamiltonian."""

    beta0p: float
    lam: float

    def __post_init__(self):
        if self.beta0p <= 0:
            raise ValueError(f"beta0p must be positive, got {self.beta0p}")
        if self.lam < 0:
            raise ValueError(f"lambda must be non-negative, got {self.lam}")

    @property
    def zeta(self):
        return min(self.lam, 1.0)

    @property
    def xi(self):
        return max(self.lam - 1.0, 0.0)

    @property
    def branch(self):
        """'first' for lambda <= 1, 'second' for lambda > 1."""
        return "first" if self.lam <= LAMBDA_CRITICAL else "second"


def _hashable(x):
    return float(x)


@lru_cache(maxsize=None)
def nd_op():
    """d-boson number operator."""
    out = BosonExpr()
    for mu in range(-2, 3):
        m = d_mode(mu)
        out = out + BosonExpr.create(m) * BosonExpr.annihilate(m)
    return out


@lru_cache(maxsize=None)
def ns_op():
    return BosonExpr.create(0) * BosonExpr.annihilate(0)


@lru_cache(maxsize=None)
def pair_d_creator():
    """P+ = d+.d+ = sum_mu (-1)^mu d+_mu d+_{-mu}."""
    out = BosonExpr()
    for mu in range(-2, 3):
        out = out + BosonExpr.create(d_mode(mu)) * BosonExpr.create(d_mode(-mu)) * float(
            (-1) ** mu
        )
    return out


@lru_cache(maxsize=None)
def s_pair_creator(beta0p):
    """S+ = d+.d+ - beta0p^2 s+ s+."""
    return pair_d_creator() - (beta0p**2) * BosonExpr.create(0) * BosonExpr.create(0)


@lru_cache(maxsize=None)
def d_pair_tensor(beta0p, zeta):
    """Rank-2 tensor D+ with components D+_mu."""
    dc = d_creator_tensor()
    gg = couple(dc, dc, 2)
    comps = []
    for mu in range(-2, 3):
        comps.append(
            BosonExpr.create(d_mode(mu)) * BosonExpr.create(0) * math.sqrt(2.0) * beta0p
            + gg[mu] * (math.sqrt(7.0) * zeta)
        )
    return TensorOp(2, comps)


@lru_cache(maxsize=None)
def h1_scaled(beta0p, zeta):
    """N * H1(beta0p, zeta) = 2(1 - zeta^2) n_d (n_d - 1) + D+.D~."""
    nd = nd_op()
    dd = d_pair_tensor(beta0p, zeta)
    quad = scalar_product(dd, dd.tilde())
    return (2.0 * (1.0 - zeta**2)) * (nd * nd - nd) + quad


@lru_cache(maxsize=None)
def s_pair_squared(beta0p):
    """S+ S (the xi-coupled term of the second branch)."""
    sp = s_pair_creator(beta0p)
    return sp * sp.adjoint()


def h_scaled(params: ModelParams) -> BosonExpr:
    """N * H(lambda, beta0p) on the appropriate branch."""
    if params.lam <= LAMBDA_CRITICAL:
        return h1_scaled(_hashable(params.beta0p), _hashable(params.zeta))
    return h1_scaled(_hashable(params.beta0p), 1.0) + params.xi * s_pair_squared(
        _hashable(params.beta0p)
    )


def dh_dlambda_scaled(params: ModelParams, side="auto") -> BosonExpr:
    """N * dH/dlambda; side in {'auto','left','right'} resolves lambda = 1."""
    lam, b0 = params.lam, _hashable(params.beta0p)
    if side == "auto":
        side = "left" if lam <= LAMBDA_CRITICAL else "right"
    if (lam < LAMBDA_CRITICAL) or (lam == LAMBDA_CRITICAL and side == "left"):
        ze = min(lam, 1.0)
        nd = nd_op()
        dc = d_creator_tensor()
        gg = couple(dc, dc, 2)
        # d/dzeta of h1_scaled: -4 zeta nd(nd-1) + cross + 14 zeta Q2
        sw = BosonExpr()
        q2 = BosonExpr()
        for mu in range(-2, 3):
            g = gg[mu]
            sw = sw + BosonExpr.create(d_mode(mu)) * BosonExpr.create(0) * g.adjoint()
            q2 = q2 + g * g.adjoint()
        sw = math.sqrt(14.0) * b0 * (sw + sw.adjoint())
        return (-4.0 * ze) * (nd * nd - nd) + sw + 14.0 * ze * q2
    return s_pair_squared(b0)


def classical_h(params: ModelParams):
    """Classical limit of H (energy in the scale of half the per-boson energy)."""
    f = h_scaled(params).classical()

    def h(x, y, px, py):
        return f(x, y, px, py).real

    return h
