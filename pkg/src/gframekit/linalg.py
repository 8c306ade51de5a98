"""Dense complex linear-algebra kernel.

Hermitian eigendecomposition (LAPACK or cyclic Jacobi), SPD powers and
numerical rank. Every function is pure.
"""

from dataclasses import dataclass

import numpy as np

from . import tolerances
from .errors import NoConvergence, NotHermitian, NotPositiveDefinite


def as_matrix(m):
    """Return ``m`` as a 2-D complex128 array, rejecting NaN/Inf."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def adjoint(m):
    return np.conj(m).T


def hermitian_defect(m):
    """Relative Hermitian defect ``||m - m*||_F / max(1, ||m||_F)``."""
    return np.linalg.norm(m - adjoint(m)) / max(1.0, np.linalg.norm(m))


@dataclass(frozen=True)
class HermEig:
    eigenvalues: np.ndarray   # real, ascending
    eigenvectors: np.ndarray  # unitary, columns

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ adjoint(v)

    @property
    def lambda_min(self):
        return float(self.eigenvalues[0]) if self.eigenvalues.size else 0.0

    @property
    def lambda_max(self):
        return float(self.eigenvalues[-1]) if self.eigenvalues.size else 0.0


def _check_hermitian(m):
    if m.shape[0] != m.shape[1]:
        raise NotHermitian(f"matrix is not square: {m.shape}")
    if hermitian_defect(m) > tolerances.HERMITIAN_TOL:
        raise NotHermitian(f"Hermitian defect {hermitian_defect(m):.3e} exceeds tolerance")


def _jacobi_eig(a, max_sweeps):
    a = 0.5 * (a + adjoint(a))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(np.linalg.norm(a), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= 1e-15 * scale:
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # phase-align a[p, q] to be real, then apply the real rotation
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = adjoint(g) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
    off = np.linalg.norm(a - np.diag(np.diag(a)))
    if off <= 1e-15 * scale:
        return np.real(np.diag(a)).copy(), v
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})")


def herm_eig(m, method="lapack", max_sweeps=tolerances.JACOBI_MAX_SWEEPS):
    """Full spectral decomposition of a Hermitian matrix, eigenvalues ascending.

    ``method="jacobi"`` runs a cyclic complex Jacobi iteration; the default
    delegates to LAPACK. Both return the same contract.
    """
    a = as_matrix(m)
    _check_hermitian(a)
    if method == "lapack":
        w, v = np.linalg.eigh(0.5 * (a + adjoint(a)))
    elif method == "jacobi":
        w, v = _jacobi_eig(a.copy(), max_sweeps)
        order = np.argsort(w, kind="stable")
        w, v = w[order], v[:, order]
    else:
        raise ValueError(f"unknown eigensolver {method!r}")
    return HermEig(np.asarray(w, dtype=float), v)


_ALLOWED_POWERS = (-1.0, 1.0, 0.5, -0.5)


def spd_power(m, p, tol=None):
    """``V diag(lambda**p) V*`` for an SPD matrix; ``p`` in {-1, 1, 1/2, -1/2}."""
    p = float(p)
    if p not in _ALLOWED_POWERS:
        raise ValueError(f"unsupported power {p}")
    tol = tolerances.rank_tol() if tol is None else tol
    eig = herm_eig(m)
    if eig.eigenvalues.size == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    lmax = max(abs(eig.lambda_max), abs(eig.lambda_min))
    if lmax == 0.0 or eig.lambda_min <= tol * lmax:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {eig.lambda_min:.3e} not above {tol:.1e} * {lmax:.3e}"
        )
    v = eig.eigenvectors
    return (v * eig.eigenvalues**p) @ adjoint(v)


def singular_values(m):
    a = as_matrix(m)
    if a.size == 0:
        return np.zeros(0)
    return np.linalg.svd(a, compute_uv=False)


def numerical_rank(m, tol=None):
    """Number of singular values above ``tol * sigma_max``."""
    tol = tolerances.rank_tol() if tol is None else tol
    if not 0.0 < tol < 1.0:
        raise ValueError("tol must lie in (0, 1)")
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def random_unitary(rng, n):
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.where(np.abs(d) == 0, 1, np.abs(d)))


def random_isometry(rng, rows, cols):
    """``rows x cols`` matrix with orthonormal columns (rows >= cols)."""
    return random_unitary(rng, rows)[:, :cols]
