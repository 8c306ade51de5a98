"""Stable space splittings built on a g-frame.

The lifting operators are ``R_j = L_j*`` and the local forms are
``b_j(u, v) = <B_j u, v>`` with Hermitian positive definite ``B_j``.
The constrained infimum

    inf { sum_j b_j(u_j, u_j) : sum_j L_j* u_j = u }

equals ``<P^{-1} u, u>`` with ``P = sum_j L_j* B_j^{-1} L_j``.
"""

from dataclasses import dataclass, field

import numpy as np

from . import tolerances
from .errors import DimensionMismatch, NotAFrame, NotPositiveDefinite, SingularSplitting, ValidationError
from .gframe import frame_operator, is_gframe_spectrum, optimal_bounds
from .linalg import adjoint, as_matrix, hermitian_defect, herm_eig, spd_power


@dataclass(frozen=True, eq=False)
class BilinearFormFamily:
    forms: tuple
    c1: float = field(init=False)
    c2: float = field(init=False)

    def __post_init__(self):
        forms, lo, hi = [], np.inf, 0.0
        for i, b in enumerate(self.forms):
            b = as_matrix(b) if np.size(b) else np.zeros((0, 0), dtype=np.complex128)
            if b.shape[0] != b.shape[1]:
                raise ValidationError(f"forms[{i}]", f"form is not square: {b.shape}")
            if b.size == 0:
                forms.append(b)
                continue
            if hermitian_defect(b) > tolerances.HERMITIAN_TOL:
                raise ValidationError(f"forms[{i}]", "form is not Hermitian")
            eig = herm_eig(b)
            if eig.lambda_min <= 0.0:
                raise ValidationError(f"forms[{i}]", f"form is not positive definite (lambda_min {eig.lambda_min:.3e})")
            lo, hi = min(lo, eig.lambda_min), max(hi, eig.lambda_max)
            b = b.copy()
            b.setflags(write=False)
            forms.append(b)
        if not np.isfinite(lo):
            lo = hi = 1.0
        object.__setattr__(self, "forms", tuple(forms))
        object.__setattr__(self, "c1", float(lo))
        object.__setattr__(self, "c2", float(hi))

    @classmethod
    def identity(cls, f, c=1.0):
        return cls(tuple(c * np.eye(m) for m in f.dims))

    def __len__(self):
        return len(self.forms)


def _check(f, forms):
    if len(forms) != len(f):
        raise DimensionMismatch(f"{len(forms)} forms for {len(f)} elements")
    for (j, b), form in zip(f, forms.forms):
        if form.shape[0] != b.shape[0]:
            raise DimensionMismatch(f"element {j}: form is {form.shape[0]}x{form.shape[0]}, block has {b.shape[0]} rows")


def _inverse_forms(forms):
    try:
        return [spd_power(b, -1) if b.size else b for b in forms.forms]
    except NotPositiveDefinite as exc:
        raise SingularSplitting(str(exc)) from exc


def splitting_operator(f, forms, tol=None):
    """``P = sum_j L_j* B_j^{-1} L_j``."""
    _check(f, forms)
    p = np.zeros((f.dim_u, f.dim_u), dtype=np.complex128)
    for b, binv in zip(f.blocks, _inverse_forms(forms)):
        p += adjoint(b) @ binv @ b
    p = 0.5 * (p + adjoint(p))
    if not is_gframe_spectrum(herm_eig(p), tol):
        raise SingularSplitting("splitting operator is singular; family is not g-complete")
    return p


@dataclass(frozen=True, eq=False)
class SplittingInfimum:
    value: float
    minimizer: list


def splitting_infimum(f, forms, u):
    """Closed-form minimum and minimizer ``u_j = B_j^{-1} L_j P^{-1} u``."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (f.dim_u,):
        raise DimensionMismatch(f"vector of shape {u.shape}, expected ({f.dim_u},)")
    p = splitting_operator(f, forms)
    w = np.linalg.solve(p, u)
    minimizer = [binv @ b @ w for b, binv in zip(f.blocks, _inverse_forms(forms))]
    return SplittingInfimum(float(np.vdot(u, w).real), minimizer)


@dataclass(frozen=True)
class SplittingConstants:
    lower: float
    upper: float


def splitting_constants(f, forms):
    """Extremes of ``<P^{-1}u, u>`` on the unit sphere: ``(1/lambda_max(P), 1/lambda_min(P))``."""
    eig = herm_eig(splitting_operator(f, forms))
    return SplittingConstants(1.0 / eig.lambda_max, 1.0 / eig.lambda_min)


@dataclass(frozen=True)
class SandwichReport:
    lower: float
    upper: float
    lower_bound: float  # c1 / B
    upper_bound: float  # c2 / A
    slack: float
    holds: bool


def verify_sandwich(f, forms):
    """Check ``c1/B <= lower <= upper <= c2/A`` for a g-frame with bounds (A, B)."""
    if not is_gframe_spectrum(frame_operator(f).spectrum):
        raise NotAFrame("sandwich bounds need a g-frame")
    bounds = optimal_bounds(f)
    consts = splitting_constants(f, forms)
    lo = forms.c1 / bounds.upper
    hi = forms.c2 / bounds.lower
    eps = 1e-8 * hi
    holds = lo - eps <= consts.lower and consts.upper <= hi + eps and consts.lower <= consts.upper
    return SandwichReport(consts.lower, consts.upper, lo, hi, eps, bool(holds))

