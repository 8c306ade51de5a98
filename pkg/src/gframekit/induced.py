"""Induced vector sequences ``u_{j,k} = L_j* e_{j,k}`` and frames built from g-frames."""

from dataclasses import dataclass

import numpy as np

from . import tolerances
from .classify import classify
from .duality import DualPair
from .errors import DimensionMismatch, LocalPairNotDual, NotDualPair, NotUnitary
from .gframe import FrameBounds, bounds_from_spectrum, frame_operator, is_gframe_spectrum
from .linalg import adjoint, as_matrix, herm_eig, numerical_rank, spd_power


@dataclass(frozen=True, eq=False)
class VectorFrame:
    """Vectors of C^n stored as the rows of ``vectors``, labelled ``(j, k)``."""

    dim: int
    vectors: np.ndarray
    labels: tuple

    def __post_init__(self):
        if self.dim == 0:
            v = np.zeros((len(self.labels), 0), dtype=np.complex128)
        else:
            v = np.asarray(self.vectors, dtype=np.complex128).reshape(-1, self.dim)
        if not np.all(np.isfinite(v)):
            raise ValueError("vectors have non-finite entries")
        if len(self.labels) != v.shape[0]:
            raise DimensionMismatch(f"{len(self.labels)} labels for {v.shape[0]} vectors")
        labels = tuple((int(j), int(k)) for j, k in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError("labels are not unique")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_vectors(cls, vectors, j=0):
        v = np.atleast_2d(np.asarray(vectors, dtype=np.complex128))
        return cls(v.shape[1], v, tuple((j, k) for k in range(v.shape[0])))

    def __len__(self):
        return self.vectors.shape[0]

    def analysis_matrix(self):
        """Rows ``u_i*``, so that ``analysis_matrix() @ x = (<x, u_i>)_i``."""
        return np.conj(self.vectors)

    def frame_operator(self):
        """``sum_i u_i u_i*``."""
        a = self.analysis_matrix()
        return adjoint(a) @ a

    def analyze(self, x):
        return self.analysis_matrix() @ np.asarray(x, dtype=np.complex128)

    def synthesize(self, c):
        return self.vectors.T @ np.asarray(c, dtype=np.complex128)


def reconstruct_with(first, second, x):
    """``sum_i <x, first_i> second_i``."""
    return second.synthesize(first.analyze(x))


def dual_vector_residual(first, second):
    """``||sum_i second_i first_i* - I||_F / sqrt(n)``."""
    if first.dim != second.dim or len(first) != len(second):
        raise DimensionMismatch("vector frames differ in dimension or cardinality")
    op = second.vectors.T @ first.analysis_matrix()
    return float(np.linalg.norm(op - np.eye(first.dim)) / np.sqrt(first.dim))


def _default_onb(f):
    return [np.eye(m, dtype=np.complex128) for m in f.dims]


def induced_sequence(f, onb=None):
    """``u_{j,k} = L_j* e_{j,k}``, ordered by ascending element then k.

    With the default (standard) bases ``u_{j,k}`` is the conjugate of row k
    of block j. ``onb`` gives, per element, a unitary whose columns are the
    ``e_{j,k}``.
    """
    onb = _default_onb(f) if onb is None else onb
    if len(onb) != len(f):
        raise DimensionMismatch(f"{len(onb)} bases for {len(f)} elements")
    rows, labels = [], []
    for (j, b), e in zip(f, onb):
        e = as_matrix(e) if np.size(e) else np.zeros((0, 0), dtype=np.complex128)
        if e.shape != (b.shape[0], b.shape[0]):
            raise DimensionMismatch(f"element {j}: basis shape {e.shape}, expected {(b.shape[0],) * 2}")
        if e.size and np.linalg.norm(adjoint(e) @ e - np.eye(e.shape[0])) > 1e-10:
            raise NotUnitary(f"element {j}: basis is not unitary")
        u = adjoint(b) @ e  # columns u_{j,k}
        rows.append(u.T)
        labels.extend((j, k) for k in range(b.shape[0]))
    vectors = np.vstack(rows) if rows else np.zeros((0, f.dim_u))
    return VectorFrame(f.dim_u, vectors, tuple(labels))


def classify_vectors(vf, tol=None):
    """Frame/Bessel/tight/Riesz/orthonormal status of an ordinary vector family.

    Works from the vectors, their Gram matrix ``<u_k, u_i>`` and the vector
    frame operator, without going through the block machinery.
    """
    tol = tolerances.rank_tol() if tol is None else tol
    n, count = vf.dim, len(vf)
    s = vf.frame_operator()
    spec = herm_eig(0.5 * (s + adjoint(s)))
    bounds = bounds_from_spectrum(spec)
    frame = is_gframe_spectrum(spec, tol)
    gram = vf.analysis_matrix() @ vf.vectors.T if count else np.zeros((0, 0))
    gram_eigs = herm_eig(0.5 * (gram + adjoint(gram))).eigenvalues if count else np.zeros(0)
    complete = count > 0 and numerical_rank(vf.vectors, tol) == n
    riesz = frame and complete and count == n
    riesz_bounds = FrameBounds(float(gram_eigs[0]), float(gram_eigs[-1])) if riesz else None
    orthonormal = riesz and np.linalg.norm(gram - np.eye(count)) <= tolerances.ORTHONORMAL_TOL
    tight = frame and (bounds.upper - bounds.lower) / bounds.upper <= tolerances.TIGHT_TOL
    return dict(dim_u=n, dim_sum=count, is_bessel=True, bessel_bound=bounds.upper,
                is_complete=bool(complete), is_frame=bool(frame), bounds=bounds,
                is_tight=bool(tight), is_riesz=bool(riesz), riesz_bounds=riesz_bounds,
                is_orthonormal=bool(orthonormal))


_COMPARED = ("is_bessel", "is_complete", "is_frame", "is_tight", "is_riesz", "is_orthonormal")


@dataclass(frozen=True, eq=False)
class EquivalenceReport:
    gframe_flags: dict
    vector_flags: dict
    flags_agree: bool
    bounds_gap: float
    operator_residual: float  # ||sum u u* - S||_max
    agrees: bool


def equivalence_report(f, onb=None, bounds_tol=1e-9, operator_tol=1e-11):
    """Classify the induced sequence directly and compare with the g-frame."""
    g = classify(f)
    vf = induced_sequence(f, onb)
    v = classify_vectors(vf)
    gflags = {k: getattr(g, k) for k in _COMPARED}
    vflags = {k: v[k] for k in _COMPARED}
    s = frame_operator(f).s
    scale = max(1.0, float(np.abs(s).max()))
    residual = float(np.abs(vf.frame_operator() - s).max())
    bgap = max(abs(g.bounds.lower - v["bounds"].lower), abs(g.bounds.upper - v["bounds"].upper))
    flags_agree = gflags == vflags
    agrees = flags_agree and bgap <= bounds_tol * scale and residual <= operator_tol * scale
    return EquivalenceReport(gflags, vflags, flags_agree, bgap, residual, agrees)


def construct_dual_frames(p, local_primal, local_dual, tol=tolerances.DUAL_TOL):
    """Vector frames ``{L_j* g_{j,k}}`` and ``{G_j* h_{j,k}}`` from a dual g-frame pair.

    ``local_primal[i]`` / ``local_dual[i]`` must be dual vector frames of
    ``C^{m_j}`` for the i-th element.
    """
    if not isinstance(p, DualPair):
        raise NotDualPair("expected a DualPair")
    f, d = p.primal, p.dual
    if len(local_primal) != len(f) or len(local_dual) != len(f):
        raise DimensionMismatch("need one local frame pair per element")
    rows1, rows2, labels = [], [], []
    for (j, b), bd, lp, ld in zip(f, d.blocks, local_primal, local_dual):
        m = b.shape[0]
        if lp.dim != m or ld.dim != m:
            raise DimensionMismatch(f"element {j}: local frames live in C^{lp.dim}/C^{ld.dim}, expected C^{m}")
        if len(lp) != len(ld):
            raise DimensionMismatch(f"element {j}: local frames differ in cardinality")
        if m == 0:
            continue
        res = dual_vector_residual(lp, ld)
        if res > tol:
            raise LocalPairNotDual(f"element {j}: local dual residual {res:.3e}")
        rows1.append((adjoint(b) @ lp.vectors.T).T)
        rows2.append((adjoint(bd) @ ld.vectors.T).T)
        labels.extend((j, k) for k in range(len(lp)))
    n = f.dim_u
    v1 = np.vstack(rows1) if rows1 else np.zeros((0, n))
    v2 = np.vstack(rows2) if rows2 else np.zeros((0, n))
    return VectorFrame(n, v1, tuple(labels)), VectorFrame(n, v2, tuple(labels))


@dataclass(frozen=True)
class CanonicalDualityCheck:
    is_dual: bool
    dual_residual: float
    is_canonical: bool
    canonical_residual: float
    tol: float


def canonical_duality_check(first, second, tol=tolerances.CANONICAL_TOL):
    """Is ``second_i = S_first^{-1} first_i`` for every i?"""
    dres = dual_vector_residual(first, second)
    s_inv = spd_power(first.frame_operator(), -1)
    expected = (s_inv @ first.vectors.T).T
    scale = max(1.0, float(np.abs(expected).max())) if expected.size else 1.0
    cres = float(np.abs(expected - second.vectors).max()) / scale if expected.size else 0.0
    return CanonicalDualityCheck(dres <= tolerances.DUAL_TOL, dres, cres <= tol, cres, tol)
