"""Element removal: does a g-frame survive losing one element?

With finite-dimensional component spaces the reduced family is either
g-incomplete or still a g-frame. Which one is decided by whether
``T0 = G_j0 L_j0* = L_j0 S^{-1} L_j0*`` has eigenvalue 1, where ``G`` is
the canonical dual.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import tolerances
from .duality import canonical_dual
from .errors import NotAFrame
from .gframe import FrameBounds, GFrame, bounds_from_spectrum, frame_operator, is_gframe_spectrum
from .linalg import adjoint, herm_eig

NOT_G_COMPLETE = "NotGComplete"
STILL_G_FRAME = "StillGFrame"


@dataclass(frozen=True, eq=False)
class RemovalVerdict:
    removed_index: int
    verdict: str
    certificate: Optional[np.ndarray]  # g0 with T0 g0 = g0, for NotGComplete
    certificate_residual: Optional[float]
    gap: Optional[float]               # min |lambda - 1| over spec(T0), for StillGFrame
    new_bounds: Optional[FrameBounds]
    t0_spectrum: np.ndarray = field(repr=False)
    ill_conditioned: bool = False
    reclassified_frame: bool = False   # direct spectral check of the reduced family

    @property
    def agrees(self):
        return self.reclassified_frame == (self.verdict == STILL_G_FRAME)


def remove_element(f, j0):
    pos = f.position(j0)
    keep = [i for i in range(len(f)) if i != pos]
    return GFrame(f.dim_u, tuple(f.indices[i] for i in keep), tuple(f.blocks[i] for i in keep))


def removal_operator(f, j0, dual=None):
    """``T0 = L_j0 S^{-1} L_j0*`` (Hermitian PSD, spectrum in [0, 1])."""
    dual = canonical_dual(f) if dual is None else dual
    t0 = dual.block(j0) @ adjoint(f.block(j0))
    return 0.5 * (t0 + adjoint(t0))


def classify_removal(f, j0, tol=tolerances.EIGENVALUE_ONE_TOL, dual=None):
    dual = canonical_dual(f) if dual is None else dual
    f.position(j0)
    t0 = removal_operator(f, j0, dual)
    reduced = remove_element(f, j0)
    reduced_spec = frame_operator(reduced).spectrum
    reclassified = is_gframe_spectrum(reduced_spec)

    if t0.shape[0] == 0:
        return RemovalVerdict(j0, STILL_G_FRAME, None, None, 1.0,
                              bounds_from_spectrum(reduced_spec), np.zeros(0),
                              reclassified_frame=reclassified)

    eig = herm_eig(t0)
    dist = np.abs(eig.eigenvalues - 1.0)
    k = int(np.argmin(dist))
    ill = bool(tol < dist[k] < tolerances.ILL_CONDITIONED_TOL)
    if dist[k] <= tol:
        g0 = eig.eigenvectors[:, k]
        res = float(np.linalg.norm(t0 @ g0 - g0) / np.linalg.norm(g0))
        return RemovalVerdict(j0, NOT_G_COMPLETE, g0, res, None, None, eig.eigenvalues,
                              ill_conditioned=ill, reclassified_frame=reclassified)
    return RemovalVerdict(j0, STILL_G_FRAME, None, None, float(dist[k]),
                          bounds_from_spectrum(reduced_spec), eig.eigenvalues,
                          ill_conditioned=ill, reclassified_frame=reclassified)


@dataclass(frozen=True, eq=False)
class ExactnessReport:
    exact: bool
    verdicts: tuple


def exactness(f, threads=1):
    """Exact iff removing any single element destroys g-completeness."""
    dual = canonical_dual(f)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            verdicts = tuple(pool.map(lambda j: classify_removal(f, j, dual=dual), f.indices))
    else:
        verdicts = tuple(classify_removal(f, j, dual=dual) for j in f.indices)
    return ExactnessReport(all(v.verdict == NOT_G_COMPLETE for v in verdicts), verdicts)


def is_exact(f):
    try:
        return exactness(f).exact
    except NotAFrame:
        return False
