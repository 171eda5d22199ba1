"""Brute-force Fock-space oracle over the six s/d boson modes.

Independent dense representation used to gate the optimized matrix builders
and expectation engines at small particle number.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .algebra import N_MODES, BosonExpr


@lru_cache(maxsize=None)
def fock_basis(n_total):
    """All 6-mode occupation tuples with exactly n_total quanta."""
    states = []
    for occ in itertools.product(range(n_total + 1), repeat=N_MODES - 1):
        rest = n_total - sum(occ)
        if rest >= 0:
            states.append((rest,) + occ)
    states.sort()
    return tuple(states)


@lru_cache(maxsize=None)
def _index(n_total):
    return {occ: i for i, occ in enumerate(fock_basis(n_total))}


def matrix(expr: BosonExpr, n_total, n_total_out=None):
    """Dense matrix of expr between the N=n_total and N=n_total_out sectors."""
    if n_total_out is None:
        n_total_out = n_total
    src = fock_basis(n_total)
    idx = _index(n_total_out)
    out = np.zeros((len(idx), len(src)), dtype=complex)
    for j, occ in enumerate(src):
        for occ2, amp in expr.apply({occ: 1.0}).items():
            if sum(occ2) == n_total_out:
                out[idx[occ2], j] += amp
    return out


def apply_to_vector(expr: BosonExpr, vec, n_total, n_total_out):
    """Apply expr to a coefficient vector over fock_basis(n_total)."""
    src = fock_basis(n_total)
    idx = _index(n_total_out)
    out = np.zeros(len(idx), dtype=complex)
    for j, c in enumerate(vec):
        if c == 0:
            continue
        for occ2, amp in expr.apply({src[j]: c}).items():
            if sum(occ2) == n_total_out:
                out[idx[occ2]] += amp
    return out


def condensate_vector(amps, n_total):
    """Normalized (sum_k amps[k] b_k^+)^N |0> as a coefficient vector."""
    amps = np.asarray(amps, dtype=complex)
    basis = fock_basis(n_total)
    out = np.zeros(len(basis), dtype=complex)
    for i, occ in enumerate(basis):
        c = math.sqrt(math.factorial(n_total))
        for k, n in enumerate(occ):
            if n:
                c *= amps[k] ** n / math.sqrt(math.factorial(n))
            elif amps[k] == 0 and n:
                c = 0
        out[i] = c
    nrm = np.linalg.norm(out)
    if nrm == 0:
        raise ValueError("zero condensate vector")
    return out / nrm


def expectation(expr: BosonExpr, vec, n_total):
    """<vec| expr |vec> for a number-conserving expr."""
    m = matrix(expr, n_total)
    return complex(np.vdot(vec, m @ vec))


def l_operator_squared():
    """Total angular momentum squared sum_q L_q^+ L_q, L_q = sqrt(10)[d+ d~]^(1)_q."""
    from .algebra import BosonExpr, couple, d_annihilator_tilde, d_creator_tensor

    lq = couple(d_creator_tensor(), d_annihilator_tilde(), 1)
    total = BosonExpr()
    for m in (-1, 0, 1):
        comp = lq[m] * math.sqrt(10.0)
        total = total + comp.adjoint() * comp
    return total


def l0_dimension(n_total):
    """Count of L=0 states at boson number n_total by diagonalizing L^2."""
    m = matrix(l_operator_squared(), n_total)
    evals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return int(np.sum(np.abs(evals) < 1e-8))
