"""Canonical duals, the tight transform, reconstruction and minimal-norm coefficients."""

from dataclasses import dataclass

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, NotAFrame, NotARepresentation, NotDualPair
from .gframe import (
    GFrame,
    analyze,
    check_coefficients,
    frame_operator,
    is_gcomplete,
    is_gframe_spectrum,
    split_coefficients,
    stack_coefficients,
    synthesize,
)
from .linalg import adjoint, spd_power


def _checked_operator(f, tol=None):
    op = frame_operator(f)
    if not is_gframe_spectrum(op.spectrum, tol):
        raise NotAFrame(
            f"lambda_min(S) = {op.spectrum.lambda_min:.3e} is not above threshold "
            f"(lambda_max = {op.spectrum.lambda_max:.3e})"
        )
    return op


def canonical_dual(f, tol=None):
    """Blocks ``L_j S^{-1}``; frame bounds become ``(1/B, 1/A)``."""
    s_inv = spd_power(_checked_operator(f, tol).s, -1)
    return f.with_blocks(b @ s_inv for b in f.blocks)


def tight_transform(f, tol=None):
    """Blocks ``L_j S^{-1/2}``, a Parseval g-frame."""
    s_isqrt = spd_power(_checked_operator(f, tol).s, -0.5)
    return f.with_blocks(b @ s_isqrt for b in f.blocks)


def _check_compatible(a, b):
    if a.dim_u != b.dim_u or a.indices != b.indices or a.dims != b.dims:
        raise DimensionMismatch(
            "frames differ in dim_u, index labels or element dimensions: "
            f"({a.dim_u}, {a.indices}, {a.dims}) vs ({b.dim_u}, {b.indices}, {b.dims})"
        )


def cross_operator(a, b):
    """``sum_j A_j* B_j``."""
    _check_compatible(a, b)
    out = np.zeros((a.dim_u, a.dim_u), dtype=np.complex128)
    for x, y in zip(a.blocks, b.blocks):
        out += adjoint(x) @ y
    return out


@dataclass(frozen=True)
class DualCheck:
    is_dual: bool
    residual: float
    tol: float


def verify_dual_pair(a, b, tol=tolerances.DUAL_TOL):
    """Residual ``||sum A_j* B_j - I||_F / sqrt(n)`` of the resolution of identity."""
    n = a.dim_u
    residual = float(np.linalg.norm(cross_operator(a, b) - np.eye(n)) / np.sqrt(n))
    return DualCheck(residual <= tol, residual, tol)


def is_canonical_dual(f, g, tol=tolerances.CANONICAL_TOL):
    _check_compatible(f, g)
    try:
        dual = canonical_dual(f)
    except NotAFrame:
        return False
    return dual.allclose(g, atol=tol * max(1.0, max((np.abs(b).max() for b in dual.blocks if b.size), default=1.0)))


@dataclass(frozen=True, eq=False)
class DualPair:
    """Two g-frames with ``sum_j L_j* G_j = I``; canonical or not."""

    primal: GFrame
    dual: GFrame

    def __post_init__(self):
        check = verify_dual_pair(self.primal, self.dual)
        if not check.is_dual:
            raise NotDualPair(f"resolution-of-identity residual {check.residual:.3e}")

    @classmethod
    def canonical(cls, f):
        return cls(f, canonical_dual(f))

    @property
    def dim_u(self):
        return self.primal.dim_u


def reconstruct(p, x, order="primal"):
    """``sum L_j* G_j x`` (``order="primal"``) or ``sum G_j* L_j x`` (``"dual"``)."""
    if order == "primal":
        return synthesize(p.primal, analyze(p.dual, x))
    if order == "dual":
        return synthesize(p.dual, analyze(p.primal, x))
    raise ValueError(f"order must be 'primal' or 'dual', got {order!r}")


@dataclass(frozen=True)
class MinimalNormReport:
    lhs: float           # sum ||g_j||^2
    canonical: float     # sum ||dual_j x||^2
    correction: float    # sum ||g_j - dual_j x||^2
    rhs: float
    gap: float
    holds: bool


def minimal_norm_check(f, x, g, tol=1e-8):
    """Both sides of ``sum||g_j||^2 = sum||G_j x||^2 + sum||g_j - G_j x||^2``.

    ``g`` must synthesize ``x``; ``G`` is the canonical dual.
    """
    g = check_coefficients(f, g)
    x = np.asarray(x, dtype=np.complex128)
    residual = np.linalg.norm(synthesize(f, g) - x) / max(1.0, np.linalg.norm(x))
    if residual > tolerances.REPRESENTATION_TOL:
        raise NotARepresentation(f"synthesis residual {residual:.3e}")
    canon = analyze(canonical_dual(f), x)
    lhs = float(sum(np.vdot(gj, gj).real for gj in g))
    canonical = float(sum(np.vdot(c, c).real for c in canon))
    correction = float(sum(np.vdot(gj - c, gj - c).real for gj, c in zip(g, canon)))
    rhs = canonical + correction
    gap = abs(lhs - rhs)
    return MinimalNormReport(lhs, canonical, correction, rhs, gap, gap <= tol * max(1.0, lhs))


def synthesis_kernel_basis(f, tol=None):
    """Orthonormal basis (columns) of the kernel of the synthesis map."""
    m = f.stacked()
    if m.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(m, full_matrices=True)
    tol = tolerances.rank_tol() if tol is None else tol
    rank = int(np.count_nonzero(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return u[:, rank:]


def general_coefficients(f, x, seed, scale=1.0):
    """Canonical coefficients plus a seeded random synthesis-kernel component.

    The result still synthesizes ``x``; it equals the canonical family when
    the synthesis map is injective.
    """
    if not is_gcomplete(f):
        raise NotAFrame("family is not g-complete")
    canon = stack_coefficients(analyze(canonical_dual(f), x))
    kernel = synthesis_kernel_basis(f)
    if kernel.shape[1] == 0:
        return split_coefficients(f, canon)
    rng = np.random.default_rng(seed)
    k = kernel.shape[1]
    z = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    z *= scale * max(1.0, np.linalg.norm(canon)) / np.linalg.norm(z)
    return split_coefficients(f, canon + kernel @ z)
