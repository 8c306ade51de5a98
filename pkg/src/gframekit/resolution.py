"""Atomic resolutions of an operator against a dual g-frame pair.

For a dual pair ``(L, G)`` and any ``T`` on C^n,

    T = sum T L_j* G_j = sum T G_j* L_j = sum L_j* G_j T = sum G_j* L_j T.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import tolerances
from .duality import DualPair
from .errors import DimensionMismatch, NotDualPair
from .linalg import adjoint, as_matrix, numerical_rank


class Variant(enum.Enum):
    T_PRIMAL_DUAL = "t-primal-dual"   # T L_j* G_j
    T_DUAL_PRIMAL = "t-dual-primal"   # T G_j* L_j
    PRIMAL_DUAL_T = "primal-dual-t"   # L_j* G_j T
    DUAL_PRIMAL_T = "dual-primal-t"   # G_j* L_j T


@dataclass(frozen=True, eq=False)
class AtomicResolution:
    variant: Variant
    indices: tuple
    element_dims: tuple
    atoms: tuple
    residual: float  # ||sum atoms - T||_F

    def total(self):
        return sum(self.atoms, np.zeros_like(self.atoms[0])) if self.atoms else None


def resolve(p, t, variant=Variant.T_PRIMAL_DUAL):
    if not isinstance(p, DualPair):
        raise NotDualPair("expected a verified DualPair")
    variant = Variant(variant)
    t = as_matrix(t)
    n = p.dim_u
    if t.shape != (n, n):
        raise DimensionMismatch(f"operator has shape {t.shape}, expected {(n, n)}")
    atoms = []
    for lam, gam in zip(p.primal.blocks, p.dual.blocks):
        if variant is Variant.T_PRIMAL_DUAL:
            atom = t @ (adjoint(lam) @ gam)
        elif variant is Variant.T_DUAL_PRIMAL:
            atom = t @ (adjoint(gam) @ lam)
        elif variant is Variant.PRIMAL_DUAL_T:
            atom = (adjoint(lam) @ gam) @ t
        else:
            atom = (adjoint(gam) @ lam) @ t
        atoms.append(atom)
    total = np.zeros((n, n), dtype=np.complex128)
    for a in atoms:
        total += a
    residual = float(np.linalg.norm(total - t))
    return AtomicResolution(variant, p.primal.indices, p.primal.dims, tuple(atoms), residual)


def resolution_ok(r, t, tol=tolerances.RESOLUTION_TOL):
    return r.residual <= tol * max(1.0, float(np.linalg.norm(t)))


def atom_rank_profile(r, tol=None):
    """Numerical rank of every atom; each is at most the element dimension."""
    ranks = []
    for j, m, atom in zip(r.indices, r.element_dims, r.atoms):
        rank = numerical_rank(atom, tol) if np.abs(atom).max(initial=0.0) > 0 else 0
        if rank > m:
            raise AssertionError(f"atom {j} has rank {rank} > element dimension {m}")
        ranks.append(rank)
    return tuple(ranks)
