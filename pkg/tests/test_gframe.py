import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gframekit import GFrame, analyze, frame_operator, optimal_bounds, synthesize
from gframekit.errors import DimensionMismatch, UnknownIndex
from gframekit.generators import from_partition_projections, identity_frame, mercedes_benz
from gframekit.gframe import (
    check_coefficients,
    is_gcomplete,
    is_gframe,
    scale,
    split_coefficients,
    stack_coefficients,
)
from oracles import bounds_oracle, frame_operator_by_rows, instances, is_frame_oracle, random_instance, random_vector


def test_blocks_are_read_only():
    f = identity_frame(2)
    with pytest.raises(ValueError):
        f.blocks[0][0, 0] = 5.0


def test_construction_validates():
    with pytest.raises(DimensionMismatch):
        GFrame(3, (1,), (np.eye(2),))
    with pytest.raises(ValueError):
        GFrame(2, (1, 1), (np.eye(2), np.eye(2)))
    with pytest.raises(ValueError):
        GFrame(2, (1,), (np.array([[np.nan, 0.0]]),))


def test_from_blocks_defaults_to_one_based_labels():
    f = GFrame.from_blocks([np.eye(2), np.ones((1, 2))])
    assert f.indices == (1, 2)
    assert f.dims == (2, 1)
    assert f.dim_sum == 3


def test_zero_dimensional_element():
    f = GFrame(2, (1, 2), (np.eye(2), np.zeros((0, 2))))
    assert f.dims == (2, 0)
    np.testing.assert_allclose(frame_operator(f).s, np.eye(2))
    assert analyze(f, [1, 2])[1].shape == (0,)


def test_block_lookup_and_unknown_index():
    f = mercedes_benz()
    assert f.block(2).shape == (1, 2)
    with pytest.raises(UnknownIndex):
        f.block(7)


def test_partition_frame_operator_and_bounds():
    f = from_partition_projections(3, [{1, 2}, {2, 3}])
    np.testing.assert_allclose(frame_operator(f).s, np.diag([1, 2, 1]), atol=1e-12)
    b = optimal_bounds(f)
    assert (b.lower, b.upper) == pytest.approx((1.0, 2.0), abs=1e-12)
    assert b.ratio == pytest.approx(2.0)


def test_mercedes_is_tight_three_halves():
    b = optimal_bounds(mercedes_benz())
    assert b.lower == pytest.approx(1.5, abs=1e-10)
    assert b.upper == pytest.approx(1.5, abs=1e-10)


def test_uncovered_partition_is_not_a_frame():
    f = from_partition_projections(3, [{1, 2}])
    assert not is_gframe(f)
    assert not is_gcomplete(f)
    assert optimal_bounds(f).lower == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("seed", range(24))
def test_frame_operator_matches_row_summation(seed):
    f = random_instance(seed)
    fo = frame_operator(f)
    np.testing.assert_allclose(fo.s, frame_operator_by_rows(f), atol=1e-12)
    np.testing.assert_allclose(fo.s, fo.s.conj().T, atol=0)
    lo, hi = bounds_oracle(f)
    b = optimal_bounds(f)
    assert b.upper == pytest.approx(hi, rel=1e-10)
    assert b.lower == pytest.approx(max(lo, 0.0), abs=1e-10 * hi)
    assert is_gframe(f) == is_frame_oracle(f)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_frame_inequality_and_adjointness(seed):
    f = random_instance(seed)
    rng = np.random.default_rng(seed)
    x = random_vector(rng, f.dim_u)
    g = [random_vector(rng, m) for m in f.dims]
    energy = sum(np.linalg.norm(c) ** 2 for c in analyze(f, x))
    b = optimal_bounds(f)
    nx = np.linalg.norm(x) ** 2
    assert b.lower * nx * (1 - 1e-10) <= energy <= b.upper * nx * (1 + 1e-10)
    # <T x, g> = <x, T* g>
    lhs = sum(np.vdot(gj, cj) for gj, cj in zip(g, analyze(f, x)))
    rhs = np.vdot(synthesize(f, g), x)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


def test_frame_operator_is_synthesis_of_analysis(rng):
    f = random_instance(5)
    x = random_vector(rng, f.dim_u)
    np.testing.assert_allclose(synthesize(f, analyze(f, x)), frame_operator(f).s @ x, atol=1e-11)


def test_coefficient_stacking_roundtrip(rng):
    f = random_instance(2)
    g = [random_vector(rng, m) for m in f.dims]
    back = split_coefficients(f, stack_coefficients(g))
    for a, b in zip(g, back):
        np.testing.assert_array_equal(a, b)
    with pytest.raises(DimensionMismatch):
        check_coefficients(f, g[:-1])


def test_scaling_scales_bounds_quadratically():
    f = random_instance(0)
    b, b3 = optimal_bounds(f), optimal_bounds(scale(f, 3.0))
    assert b3.lower == pytest.approx(9 * b.lower)
    assert b3.upper == pytest.approx(9 * b.upper)


def test_factory_bounds_are_one_and_cond():
    for f in instances(40):
        if is_frame_oracle(f):
            assert optimal_bounds(f).lower == pytest.approx(1.0, rel=1e-9)
