"""The g-frame data model: analysis, synthesis, frame operator and bounds.

A g-frame on C^n is a finite ordered family of blocks ``L_j`` of shape
``(m_j, n)``. Coefficient families are plain lists of 1-D arrays aligned
with the element order.
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, UnknownIndex
from .linalg import HermEig, adjoint, as_matrix, herm_eig, numerical_rank


def _frozen(a):
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GFrame:
    dim_u: int
    indices: tuple
    blocks: tuple

    def __post_init__(self):
        if self.dim_u < 1:
            raise ValueError("dim_u must be positive")
        if len(self.indices) != len(self.blocks):
            raise ValueError("indices and blocks differ in length")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"index labels are not distinct: {self.indices}")
        blocks = []
        for j, b in zip(self.indices, self.blocks):
            b = np.asarray(b, dtype=np.complex128)
            # m_j = 0 blocks are allowed; normalise them to shape (0, n)
            b = as_matrix(b) if b.size else np.zeros((0, self.dim_u), dtype=np.complex128)
            if b.shape[1] != self.dim_u:
                raise DimensionMismatch(
                    f"element {j}: block has {b.shape[1]} columns, expected {self.dim_u}"
                )
            blocks.append(_frozen(b))
        object.__setattr__(self, "indices", tuple(int(j) for j in self.indices))
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def from_blocks(cls, blocks, indices=None, dim_u=None):
        blocks = [np.atleast_2d(np.asarray(b, dtype=np.complex128)) for b in blocks]
        if dim_u is None:
            if not blocks:
                raise ValueError("dim_u is required for an empty family")
            dim_u = blocks[0].shape[1]
        if indices is None:
            indices = range(1, len(blocks) + 1)
        return cls(dim_u, tuple(indices), tuple(blocks))

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(zip(self.indices, self.blocks))

    @property
    def dims(self):
        return tuple(b.shape[0] for b in self.blocks)

    @property
    def dim_sum(self):
        return sum(self.dims)

    def position(self, j):
        try:
            return self.indices.index(j)
        except ValueError:
            raise UnknownIndex(f"index {j} not in {self.indices}") from None

    def block(self, j):
        return self.blocks[self.position(j)]

    def stacked(self):
        """All blocks stacked vertically: the ``(sum m_j) x n`` analysis matrix."""
        if not self.blocks:
            return np.zeros((0, self.dim_u), dtype=np.complex128)
        return np.vstack(self.blocks)

    def with_blocks(self, blocks):
        """Same labels and ``dim_u``, new blocks."""
        return GFrame(self.dim_u, self.indices, tuple(blocks))

    def allclose(self, other, atol):
        return (
            self.dim_u == other.dim_u
            and self.indices == other.indices
            and self.dims == other.dims
            and all(np.allclose(a, b, rtol=0, atol=atol) for a, b in zip(self.blocks, other.blocks))
        )


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    @property
    def ratio(self):
        return self.upper / self.lower if self.lower > 0 else np.inf


@dataclass(frozen=True, eq=False)
class FrameOperatorMatrix:
    s: np.ndarray
    spectrum: HermEig


def _vector(x, n):
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (n,):
        raise DimensionMismatch(f"vector of shape {x.shape}, expected ({n},)")
    return x


def check_coefficients(f, g):
    if len(g) != len(f):
        raise DimensionMismatch(f"{len(g)} coefficient vectors for {len(f)} elements")
    out = []
    for (j, b), gj in zip(f, g):
        gj = np.asarray(gj, dtype=np.complex128).reshape(-1)
        if gj.shape[0] != b.shape[0]:
            raise DimensionMismatch(f"element {j}: coefficient length {gj.shape[0]}, expected {b.shape[0]}")
        out.append(gj)
    return out


def analyze(f, x):
    """Coefficients ``g_j = L_j x``."""
    x = _vector(x, f.dim_u)
    return [b @ x for b in f.blocks]


def synthesize(f, g):
    """``sum_j L_j* g_j``."""
    g = check_coefficients(f, g)
    out = np.zeros(f.dim_u, dtype=np.complex128)
    for b, gj in zip(f.blocks, g):
        out += adjoint(b) @ gj
    return out


def stack_coefficients(g):
    return np.concatenate([np.asarray(gj).reshape(-1) for gj in g]) if g else np.zeros(0, complex)


def split_coefficients(f, c):
    out, start = [], 0
    for m in f.dims:
        out.append(np.asarray(c[start:start + m]))
        start += m
    return out


def frame_operator(f):
    """``S = sum_j L_j* L_j`` in element order, with its spectrum."""
    s = np.zeros((f.dim_u, f.dim_u), dtype=np.complex128)
    for b in f.blocks:
        s += adjoint(b) @ b
    s = 0.5 * (s + adjoint(s))
    return FrameOperatorMatrix(s, herm_eig(s))


def bounds_from_spectrum(spectrum):
    return FrameBounds(max(0.0, spectrum.lambda_min), max(0.0, spectrum.lambda_max))


def optimal_bounds(f):
    """Sharp frame bounds ``(lambda_min(S), lambda_max(S))``."""
    return bounds_from_spectrum(frame_operator(f).spectrum)


def is_gframe_spectrum(spectrum, tol=None):
    tol = tolerances.rank_tol() if tol is None else tol
    return spectrum.lambda_max > 0 and spectrum.lambda_min > tol * spectrum.lambda_max


def is_gframe(f, tol=None):
    return is_gframe_spectrum(frame_operator(f).spectrum, tol)


def is_gcomplete(f, tol=None):
    return numerical_rank(f.stacked(), tol) == f.dim_u if f.dim_sum else False


def scale(f, c):
    return f.with_blocks(c * b for b in f.blocks)
