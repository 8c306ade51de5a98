"""Classification of finite families: Bessel, complete, frame, tight, Riesz, orthonormal, exact."""

from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import tolerances
from .duality import canonical_dual
from .errors import NotAFrame, NotRieszBasis
from .excess import is_exact
from .gframe import FrameBounds, bounds_from_spectrum, frame_operator, is_gframe_spectrum
from .linalg import adjoint, herm_eig, numerical_rank, singular_values, spd_power


@dataclass(frozen=True)
class ClassificationReport:
    dim_u: int
    dim_sum: int
    is_bessel: bool
    bessel_bound: float
    is_complete: bool
    is_frame: bool
    bounds: FrameBounds
    is_tight: bool
    is_riesz: bool
    riesz_bounds: Optional[FrameBounds]
    is_orthonormal: bool
    is_exact: bool

    def flags(self):
        return {k: v for k, v in asdict(self).items() if k.startswith("is_")}


def stacked_is_unitary(m, tol=tolerances.ORTHONORMAL_TOL):
    if m.shape[0] != m.shape[1]:
        return False
    eye = np.eye(m.shape[0])
    return bool(np.linalg.norm(m @ adjoint(m) - eye) <= tol and np.linalg.norm(adjoint(m) @ m - eye) <= tol)


def classify_matrix(m, tol=None):
    """Classification of the family whose stacked analysis matrix is ``m``.

    Shared by g-frames (blocks stacked) and vector frames (conjugated vectors
    as rows); exactness is left to the caller.
    """
    n = m.shape[1]
    s = adjoint(m) @ m
    spec = herm_eig(0.5 * (s + adjoint(s)))
    bounds = bounds_from_spectrum(spec)
    complete = m.shape[0] > 0 and numerical_rank(m, tol) == n
    frame = is_gframe_spectrum(spec, tol)
    tight = frame and (bounds.upper - bounds.lower) / bounds.upper <= tolerances.TIGHT_TOL
    riesz = frame and complete and m.shape[0] == n
    riesz_bounds = None
    if riesz:
        sv = singular_values(m)
        riesz_bounds = FrameBounds(float(sv[-1] ** 2), float(sv[0] ** 2))
    orthonormal = riesz and stacked_is_unitary(m)
    return dict(dim_u=n, dim_sum=m.shape[0], is_bessel=True, bessel_bound=bounds.upper,
                is_complete=bool(complete), is_frame=bool(frame), bounds=bounds,
                is_tight=bool(tight), is_riesz=bool(riesz), riesz_bounds=riesz_bounds,
                is_orthonormal=bool(orthonormal))


def classify(f, tol=None):
    fields = classify_matrix(f.stacked(), tol)
    exact = fields["is_frame"] and is_exact(f)
    return ClassificationReport(**fields, is_exact=bool(exact))


@dataclass(frozen=True)
class RieszWitness:
    min_ratio: float
    max_ratio: float
    samples: int


def riesz_inequality_witness(f, trials=200, seed=0):
    """Extreme ratios ``||sum_{J1} L_j* g_j||^2 / sum_{J1} ||g_j||^2``.

    Each trial draws a random nonempty subset ``J1`` and a random coefficient
    family on it; the subset's worst-case (smallest singular) direction is
    probed too, so a nontrivial synthesis kernel shows up as ratio ~ 0.
    """
    rng = np.random.default_rng(seed)
    live = [i for i, m in enumerate(f.dims) if m > 0]
    if not live:
        return RieszWitness(0.0, 0.0, 0)
    ratios = []
    for _ in range(trials):
        mask = rng.random(len(live)) < 0.5
        if not mask.any():
            mask[rng.integers(len(live))] = True
        chosen = [live[i] for i in np.flatnonzero(mask)]
        synth = np.hstack([adjoint(f.blocks[i]) for i in chosen])  # n x sum m_j
        c = rng.standard_normal(synth.shape[1]) + 1j * rng.standard_normal(synth.shape[1])
        ratios.append(np.linalg.norm(synth @ c) ** 2 / np.linalg.norm(c) ** 2)
        _, _, vh = np.linalg.svd(synth, full_matrices=True)
        worst = np.conj(vh[-1])
        ratios.append(np.linalg.norm(synth @ worst) ** 2 / np.linalg.norm(worst) ** 2)
    return RieszWitness(float(min(ratios)), float(max(ratios)), len(ratios))


def qt_factorize(f):
    """``L_j = Q_j T`` with ``{Q_j}`` g-orthonormal and ``T = S^{1/2}``."""
    report = classify_matrix(f.stacked())
    if not report["is_riesz"]:
        raise NotRieszBasis(f"family is not a g-Riesz basis (dim_sum {f.dim_sum}, dim_u {f.dim_u})")
    s = frame_operator(f).s
    t = spd_power(s, 0.5)
    s_isqrt = spd_power(s, -0.5)
    q = f.with_blocks(b @ s_isqrt for b in f.blocks)
    return q, t


@dataclass(frozen=True)
class BiorthonormalityReport:
    passes: bool
    max_offdiagonal: float   # max ||G_j2 L_j1*|| over j1 != j2
    max_diagonal_defect: float  # max ||G_j L_j* - I||
    tol: float


def biorthonormality_check(f, tol=tolerances.ORTHONORMAL_TOL):
    """Check ``G_j2 L_j1* = delta_{j1 j2} I`` against the canonical dual ``G``."""
    try:
        dual = canonical_dual(f)
    except NotAFrame as exc:
        raise NotRieszBasis(str(exc)) from exc
    off, diag = 0.0, 0.0
    for i1, b1 in enumerate(f.blocks):
        for i2, d2 in enumerate(dual.blocks):
            prod = d2 @ adjoint(b1)
            if prod.size == 0:
                continue
            if i1 == i2:
                diag = max(diag, float(np.linalg.norm(prod - np.eye(prod.shape[0]), 2)))
            else:
                off = max(off, float(np.linalg.norm(prod, 2)))
    return BiorthonormalityReport(off <= tol and diag <= tol, off, diag, tol)
