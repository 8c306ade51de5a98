import numpy as np
import pytest

from gframekit import optimal_bounds
from gframekit.errors import DimensionMismatch, NotAFrame, SingularSplitting, ValidationError
from gframekit.generators import from_partition_projections, mercedes_benz
from gframekit.splitting import (
    BilinearFormFamily,
    splitting_constants,
    splitting_infimum,
    splitting_operator,
    verify_sandwich,
)
from oracles import instances, is_frame_oracle, kkt_infimum, random_spd, random_vector

FRAMES = [f for f in instances(40) if is_frame_oracle(f)]


def _forms(f, seed):
    rng = np.random.default_rng(seed)
    return BilinearFormFamily(tuple(random_spd(rng, m, cond=float(rng.uniform(1, 20))) for m in f.dims))


@pytest.mark.parametrize("f", FRAMES, ids=lambda f: f"n{f.dim_u}-J{len(f)}")
def test_infimum_matches_kkt_solve(f):
    forms = _forms(f, f.dim_sum)
    rng = np.random.default_rng(1)
    for _ in range(3):
        u = random_vector(rng, f.dim_u)
        inf = splitting_infimum(f, forms, u)
        value, w = kkt_infimum(f, forms.forms, u)
        assert inf.value == pytest.approx(value, rel=1e-8)
        np.testing.assert_allclose(np.concatenate(inf.minimizer), w, atol=1e-8 * np.linalg.norm(w))
        # the minimizer is feasible
        total = sum(b.conj().T @ uj for b, uj in zip(f.blocks, inf.minimizer))
        np.testing.assert_allclose(total, u, atol=1e-9 * np.linalg.norm(u))


@pytest.mark.parametrize("f", FRAMES, ids=lambda f: f"n{f.dim_u}-J{len(f)}")
def test_sandwich_and_identity_forms(f):
    assert verify_sandwich(f, _forms(f, 3)).holds
    b = optimal_bounds(f)
    c = splitting_constants(f, BilinearFormFamily.identity(f))
    assert c.lower == pytest.approx(1 / b.upper, rel=1e-9)
    assert c.upper == pytest.approx(1 / b.lower, rel=1e-9)


def test_scaled_forms_scale_constants():
    f = mercedes_benz()
    base = splitting_constants(f, BilinearFormFamily.identity(f))
    scaled = splitting_constants(f, BilinearFormFamily.identity(f, 4.0))
    assert scaled.lower == pytest.approx(4 * base.lower)
    assert scaled.upper == pytest.approx(4 * base.upper)


def test_constants_bound_the_infimum():
    f = FRAMES[0]
    forms = _forms(f, 0)
    c = splitting_constants(f, forms)
    rng = np.random.default_rng(5)
    for _ in range(20):
        u = random_vector(rng, f.dim_u)
        q = splitting_infimum(f, forms, u).value / np.linalg.norm(u) ** 2
        assert c.lower * (1 - 1e-10) <= q <= c.upper * (1 + 1e-10)


def test_form_constants_are_spectral_extremes():
    forms = BilinearFormFamily((np.diag([2.0, 5.0]), np.array([[3.0]])))
    assert (forms.c1, forms.c2) == (2.0, 5.0)


@pytest.mark.parametrize("bad", [np.diag([1.0, -1.0]), np.array([[1.0, 2.0], [0.0, 1.0]]), np.ones((2, 3))])
def test_forms_validation_names_the_form(bad):
    with pytest.raises(ValidationError) as exc:
        BilinearFormFamily((np.eye(1), bad))
    assert exc.value.field == "forms[1]"


def test_incomplete_family_is_singular():
    f = from_partition_projections(3, [{1, 2}])
    with pytest.raises(SingularSplitting):
        splitting_operator(f, BilinearFormFamily.identity(f))
    with pytest.raises(NotAFrame):
        verify_sandwich(f, BilinearFormFamily.identity(f))


def test_shape_mismatch():
    f = mercedes_benz()
    with pytest.raises(DimensionMismatch):
        splitting_operator(f, BilinearFormFamily((np.eye(1),)))
    with pytest.raises(DimensionMismatch):
        splitting_operator(f, BilinearFormFamily((np.eye(2),) * 3))
