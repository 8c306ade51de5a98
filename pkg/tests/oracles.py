"""Independent reference computations and the seeded instance factory.

Nothing here calls into the package's numerical routines: oracles use
dense numpy solves and explicit summations so they can catch mistakes in
the spectral code paths.
"""

import math

import numpy as np

from gframekit import GFrame

ACCEPTANCE = {}  # criterion number -> summary line, printed at session end

KINDS = ("redundant", "riesz", "padded", "incomplete")
FRAME_KINDS = KINDS[:3]
MAX_DIM, MAX_ELEMENTS, MAX_BLOCK = 16, 10, 6


def _unitary(rng, n):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _isometry(rng, rows, cols):
    return _unitary(rng, rows)[:, :cols]


def _split(stacked, dims):
    out, start = [], 0
    for m in dims:
        out.append(stacked[start:start + m])
        start += m
    return out


def _dims_summing_to(rng, total, count):
    dims = np.ones(count, dtype=int)
    for _ in range(total - count):
        dims[rng.choice(np.flatnonzero(dims < MAX_BLOCK))] += 1
    return dims.tolist()


def random_instance(seed, kind=None):
    """A seeded g-family with ``n <= 16``, at most 10 elements and ``m_j <= 6``.

    Kinds: a redundant frame, a g-Riesz basis, an exact non-Riesz frame
    (Riesz blocks padded with zero rows and rotated), and an incomplete family.
    Frames have bounds ``(1, cond)`` by construction.
    """
    rng = np.random.default_rng(seed)
    kind = KINDS[seed % len(KINDS)] if kind is None else kind
    n = int(rng.integers(2, MAX_DIM + 1))
    cond = float(10 ** rng.uniform(0, 2))
    sig = np.sqrt(np.geomspace(1.0, cond, n))
    rng.shuffle(sig)

    if kind == "riesz" or kind == "padded":
        least = math.ceil((n + (kind == "padded")) / MAX_BLOCK)  # padding needs a short block
        count = int(rng.integers(least, min(n, MAX_ELEMENTS) + 1))
        dims = _dims_summing_to(rng, n, count)
        stacked = (_unitary(rng, n) * sig) @ _unitary(rng, n).conj().T
        blocks = _split(stacked, dims)
        if kind == "padded":
            room = [i for i, m in enumerate(dims) if m < MAX_BLOCK]
            chosen = rng.choice(room, size=int(rng.integers(1, len(room) + 1)), replace=False)
            for i in chosen:
                pad = int(rng.integers(1, MAX_BLOCK - dims[i] + 1))
                b = np.vstack([blocks[i], np.zeros((pad, n))])
                blocks[i] = _unitary(rng, b.shape[0]) @ b
    elif kind == "redundant":
        count = int(rng.integers(math.ceil((n + 1) / MAX_BLOCK), MAX_ELEMENTS + 1))
        while True:
            dims = rng.integers(1, MAX_BLOCK + 1, size=count)
            if dims.sum() > n:
                break
        stacked = (_isometry(rng, int(dims.sum()), n) * sig) @ _unitary(rng, n).conj().T
        blocks = _split(stacked, dims.tolist())
    elif kind == "incomplete":
        count = int(rng.integers(1, MAX_ELEMENTS + 1))
        dims = rng.integers(1, MAX_BLOCK + 1, size=count)
        r = int(rng.integers(1, min(n, int(dims.sum()) + 1)))
        r = min(r, n - 1)
        stacked = (_isometry(rng, int(dims.sum()), r) * sig[:r]) @ _isometry(rng, n, r).conj().T
        blocks = _split(stacked, dims.tolist())
    else:
        raise ValueError(kind)
    return GFrame(n, tuple(range(1, len(blocks) + 1)), tuple(blocks))


def instances(count=200, kind=None, offset=0):
    return [random_instance(offset + s, kind) for s in range(count)]


def random_vector(rng, n):
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def random_spd(rng, m, cond=10.0):
    if m == 0:
        return np.zeros((0, 0))
    q = _unitary(rng, m)
    return (q * np.geomspace(1.0, cond, m)) @ q.conj().T


# -- oracles ----------------------------------------------------------------

def frame_operator_by_rows(f):
    """``S = sum_j sum_k r_{jk}^* r_{jk}`` accumulated one row at a time."""
    s = np.zeros((f.dim_u, f.dim_u), dtype=np.complex128)
    for b in f.blocks:
        for row in b:
            s += np.outer(np.conj(row), row)
    return s


def bounds_oracle(f):
    ev = np.linalg.eigvalsh(frame_operator_by_rows(f))
    return float(ev[0]), float(ev[-1])


def rank_oracle(m, rel=1e-8):
    """Rank from eigenvalues of ``m* m``; safe on well separated spectra only."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    ev = np.linalg.eigvalsh(m.conj().T @ m)
    return int(np.count_nonzero(ev > rel * max(ev[-1], 0.0))) if ev[-1] > 0 else 0


def is_frame_oracle(f):
    return rank_oracle(f.stacked()) == f.dim_u


def canonical_dual_oracle(f):
    """Blocks ``L_j S^{-1} = (S^{-1} L_j^*)^*`` via a dense solve."""
    s = frame_operator_by_rows(f)
    return [np.linalg.solve(s, b.conj().T).conj().T for b in f.blocks]


def removal_operator_oracle(f, pos):
    s = frame_operator_by_rows(f)
    b = f.blocks[pos]
    return b @ np.linalg.solve(s, b.conj().T)


def synthesis_kernel_projector(f):
    """Orthogonal projector onto the kernel of ``g -> sum L_j* g_j``."""
    m = f.stacked()
    s = frame_operator_by_rows(f)
    return np.eye(m.shape[0]) - m @ np.linalg.solve(s, m.conj().T)


def kkt_infimum(f, forms, u):
    """``min sum <B_j w_j, w_j>`` subject to ``sum L_j* w_j = u`` by a dense KKT solve."""
    a = f.stacked().conj().T
    total = a.shape[1]
    b = np.zeros((total, total), dtype=np.complex128)
    start = 0
    for form in forms:
        m = form.shape[0]
        b[start:start + m, start:start + m] = form
        start += m
    n = f.dim_u
    kkt = np.block([[2 * b, a.conj().T], [a, np.zeros((n, n))]])
    rhs = np.concatenate([np.zeros(total), u])
    sol = np.linalg.solve(kkt, rhs)
    w = sol[:total]
    return float(np.vdot(w, b @ w).real), w


def exact_oracle(f):
    """Exact iff every single removal leaves a rank-deficient stacked matrix."""
    if not is_frame_oracle(f):
        return False
    for pos in range(len(f)):
        rest = [b for i, b in enumerate(f.blocks) if i != pos]
        if rest and rank_oracle(np.vstack(rest)) == f.dim_u:
            return False
    return True


def tight_local_frame(rng, m, count, bound):
    """``count`` vectors of C^m (rows) forming a tight frame with the given bound."""
    return np.sqrt(bound) * _isometry(rng, count, m)


def local_frame_pair(rng, m, count):
    """A random frame of C^m and its canonical dual, as row arrays."""
    v = rng.standard_normal((count, m)) + 1j * rng.standard_normal((count, m))
    s = v.T @ v.conj()  # sum_i v_i v_i^*
    return v, np.linalg.solve(s, v.T).T
