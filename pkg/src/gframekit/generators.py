"""Deterministic constructors for example g-frames and seeded random instances.

Element labels are 1-based and coordinates in index sets are 1-based, so
``from_partition_projections(3, [{1, 2}, {2, 3}])`` reads like the maths.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    InfeasibleSpec,
    InvalidGrouping,
    InvalidLattice,
    SingularOperator,
)
from .gframe import GFrame
from .linalg import as_matrix, numerical_rank, random_isometry, random_unitary


def identity_frame(n):
    return GFrame(n, (1,), (np.eye(n),))


def from_vector_frame(vectors):
    """One rank-1 functional ``x -> <x, f_j>`` per vector (row ``conj(f_j)``)."""
    v = getattr(vectors, "vectors", vectors)
    v = np.atleast_2d(np.asarray(v, dtype=np.complex128))
    if v.shape[0] == 0:
        raise DimensionMismatch("need at least one vector")
    n = v.shape[1]
    return GFrame(n, tuple(range(1, v.shape[0] + 1)), tuple(np.conj(row)[None, :] for row in v))


def mercedes_benz():
    """Three unit vectors of R^2 at 90, 210 and 330 degrees."""
    angles = np.deg2rad([90.0, 210.0, 330.0])
    return from_vector_frame(np.column_stack([np.cos(angles), np.sin(angles)]))


def from_partition_projections(n, subsets):
    """Coordinate-selection blocks ``x -> x restricted to X_j``."""
    blocks = []
    for j, subset in enumerate(subsets, start=1):
        coords = sorted(set(int(c) for c in subset))
        if any(c < 1 or c > n for c in coords):
            raise IndexOutOfRange(f"subset {j} = {coords} not within 1..{n}")
        block = np.zeros((len(coords), n), dtype=np.complex128)
        block[np.arange(len(coords)), np.asarray(coords, dtype=int) - 1] = 1.0
        blocks.append(block)
    return GFrame(n, tuple(range(1, len(blocks) + 1)), tuple(blocks))


def from_operator(m):
    m = as_matrix(m)
    if m.shape[0] != m.shape[1] or numerical_rank(m) != m.shape[0]:
        raise SingularOperator(f"operator of shape {m.shape} is not invertible")
    return GFrame(m.shape[0], (1,), (m,))


def random_riesz_matrix(rng, n, conditioning=1.0):
    """Invertible ``n x n`` matrix ``U diag(sigma) V*`` with ``(sigma_max/sigma_min)^2 = conditioning``."""
    sig2 = np.geomspace(1.0, conditioning, n) if n > 1 else np.ones(1)
    return (random_unitary(rng, n) * np.sqrt(sig2)) @ random_unitary(rng, n).conj().T


def grouped_riesz(n, group, overlap=0, seed=0, pad=0, conditioning=1.0):
    """Cyclic groups of Riesz-basis functionals, optionally zero padded.

    Element j maps ``x`` to ``(<x, phi_a>, ..., <x, phi_{a+group-1}>, 0, ..., 0)``
    with ``a = j * (group - overlap)`` taken cyclically, followed by ``pad``
    zeros. ``{phi_i}`` is a seeded random Riesz basis of C^n (its conjugated
    vectors are the rows of the basis matrix).

    The family is exact when ``group > 2 * overlap``, and a g-Riesz basis only
    when ``overlap == 0`` and ``pad == 0``.
    """
    stride = group - overlap
    if group < 1 or overlap < 0 or pad < 0 or stride < 1 or group > n:
        raise InvalidGrouping(f"group={group}, overlap={overlap}, pad={pad} invalid for n={n}")
    if n % stride:
        raise InvalidGrouping(f"stride {stride} does not divide n={n}; no cyclic covering")
    rng = np.random.default_rng(seed)
    basis = random_riesz_matrix(rng, n, conditioning)
    blocks = []
    for j in range(n // stride):
        rows = [(j * stride + k) % n for k in range(group)]
        block = np.zeros((group + pad, n), dtype=np.complex128)
        block[:group] = basis[rows]
        blocks.append(block)
    return GFrame(n, tuple(range(1, len(blocks) + 1)), tuple(blocks))


def gabor_atoms(length, a, b, window):
    """Vectors ``g_{k,l}[t] = w[t - k a] exp(2 pi i l b t / L)``, shape ``(L/a, L/b, L)``."""
    window = np.asarray(window, dtype=np.complex128)
    if window.shape != (length,):
        raise InvalidLattice(f"window has shape {window.shape}, expected ({length},)")
    if a < 1 or b < 1 or length % a or length % b:
        raise InvalidLattice(f"a={a}, b={b} must divide L={length}")
    t = np.arange(length)
    shifts = np.stack([np.roll(window, k * a) for k in range(length // a)])
    mods = np.exp(2j * np.pi * np.outer(np.arange(length // b) * b, t) / length)
    return shifts[:, None, :] * mods[None, :, :]


def discrete_gabor(length, a, b, window):
    """Finite cyclic Gabor system on C^L, one element per time shift.

    Element k collects all modulations of the k-th translate, so its block
    has ``L/b`` rows ``conj(g_{k,l})``. Only a finite stand-in for the
    Gaussian system on L^2(R): with finite-dimensional component spaces an
    element removal can never leave a g-complete non-frame.
    """
    atoms = gabor_atoms(length, a, b, window)
    blocks = tuple(np.conj(atoms[k]) for k in range(atoms.shape[0]))
    return GFrame(length, tuple(range(1, len(blocks) + 1)), blocks)


def random_gframe(n, dims, seed=0, conditioning=1.0, rank=None):
    """Seeded random family with stacked matrix ``U diag(sigma) V*``.

    The nonzero squared singular values run geometrically from 1 to
    ``conditioning``, so a full-rank instance has bounds ``(1, conditioning)``.
    ``rank`` (default ``min(sum dims, n)``) lets callers build incomplete
    families on purpose.
    """
    dims = [int(m) for m in dims]
    total = sum(dims)
    if n < 1 or any(m < 0 for m in dims) or conditioning < 1.0:
        raise InfeasibleSpec(f"invalid n={n}, dims={dims}, conditioning={conditioning}")
    r = min(total, n) if rank is None else int(rank)
    if r < 0 or r > min(total, n):
        raise InfeasibleSpec(f"rank {r} impossible for {total} rows and n={n}")
    if r <= 1 and conditioning != 1.0:
        raise InfeasibleSpec("conditioning needs at least two nonzero singular values")
    rng = np.random.default_rng(seed)
    if r == 0:
        stacked = np.zeros((total, n), dtype=np.complex128)
    else:
        sig = np.sqrt(np.geomspace(1.0, conditioning, r)) if r > 1 else np.ones(1)
        rng.shuffle(sig)
        u = random_isometry(rng, total, r)
        v = random_isometry(rng, n, r)
        stacked = (u * sig) @ v.conj().T
    blocks, start = [], 0
    for m in dims:
        blocks.append(stacked[start:start + m])
        start += m
    return GFrame(n, tuple(range(1, len(dims) + 1)), tuple(blocks))


def random_dims(rng, n, count, max_dim, redundant=True):
    """Element dimensions in ``0..max_dim`` summing to at least ``n`` (or exactly ``n``)."""
    if count * max_dim < n:
        raise InfeasibleSpec(f"{count} elements of size <= {max_dim} cannot cover n={n}")
    if not redundant:
        dims = np.zeros(count, dtype=int)
        for _ in range(n):
            open_ = np.flatnonzero(dims < max_dim)
            dims[rng.choice(open_)] += 1
        return dims.tolist()
    while True:
        dims = rng.integers(1, max_dim + 1, size=count)
        if dims.sum() >= n:
            return dims.tolist()


@dataclass
class GeneratorSpec:
    """A named generator and its parameters; JSON-serializable for reproducibility."""

    kind: str
    params: dict = field(default_factory=dict)

    def build(self):
        p = self.params
        if self.kind == "identity":
            return identity_frame(int(p["dim"]))
        if self.kind == "mercedes":
            return mercedes_benz()
        if self.kind == "partition":
            return from_partition_projections(int(p["dim"]), p["sets"])
        if self.kind == "operator":
            return from_operator(np.asarray(p["matrix"]))
        if self.kind == "vectors":
            return from_vector_frame(np.asarray(p["vectors"]))
        if self.kind == "grouped":
            return grouped_riesz(int(p["dim"]), int(p["group"]), int(p.get("overlap", 0)),
                                 int(p.get("seed", 0)), int(p.get("pad", 0)),
                                 float(p.get("conditioning", 1.0)))
        if self.kind == "gabor":
            length = int(p["length"])
            window = p.get("window")
            if window is None:
                rng = np.random.default_rng(int(p.get("seed", 0)))
                window = rng.standard_normal(length) + 1j * rng.standard_normal(length)
            elif isinstance(window, str) and window == "delta":
                window = np.eye(length)[0]
            return discrete_gabor(length, int(p["a"]), int(p["b"]), np.asarray(window))
        if self.kind == "random":
            return random_gframe(int(p["dim"]), [int(m) for m in p["dims"]], int(p.get("seed", 0)),
                                 float(p.get("conditioning", 1.0)), p.get("rank"))
        raise InfeasibleSpec(f"unknown generator kind {self.kind!r}")

    def to_dict(self):
        return {"kind": self.kind, "params": self.params}
