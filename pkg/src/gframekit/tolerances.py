"""Default numerical tolerances.

All thresholds are relative unless noted. ``RANK_TOL`` is the one knob
exposed to users; it can be overridden with the ``GFRAMEKIT_TOL``
environment variable or the CLI ``--tol`` flag.
"""

import os

RANK_TOL = 1e-10          # singular values / eigenvalues below RANK_TOL * max count as zero
HERMITIAN_TOL = 1e-12     # ||m - m*||_F <= HERMITIAN_TOL * max(1, ||m||_F)
TIGHT_TOL = 1e-8          # (B - A) / B
ORTHONORMAL_TOL = 1e-9
DUAL_TOL = 1e-9           # ||sum L_j* G_j - I||_F / sqrt(n)
REPRESENTATION_TOL = 1e-9
EIGENVALUE_ONE_TOL = 1e-8  # absolute, spectrum of T0 lies in [0, 1]
ILL_CONDITIONED_TOL = 1e-6
CANONICAL_TOL = 1e-8
RESOLUTION_TOL = 1e-9
JACOBI_MAX_SWEEPS = 100


def rank_tol():
    """Effective rank tolerance, honouring ``GFRAMEKIT_TOL``."""
    raw = os.environ.get("GFRAMEKIT_TOL")
    if raw is None:
        return RANK_TOL
    value = float(raw)
    if not 0.0 < value < 1.0:
        raise ValueError(f"GFRAMEKIT_TOL must lie in (0, 1), got {raw}")
    return value
