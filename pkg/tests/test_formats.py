import glob
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gframekit.errors import ParseError, ValidationError
from gframekit.formats import (
    dumps_forms,
    dumps_gframe,
    dumps_operator,
    dumps_vector_frame,
    loads_forms,
    loads_gframe,
    loads_operator,
    loads_vector_frame,
    read_text,
)
from gframekit.generators import mercedes_benz
from gframekit.induced import induced_sequence
from oracles import random_instance

HERE = os.path.join(os.path.dirname(__file__), "fixtures")


def _valid_gframe_files():
    names = ["identity2", "partition_121", "partition_uncovered", "mercedes",
             "orthonormal_functionals3", "grouped_triples6", "random_frame"]
    return [os.path.join(HERE, n + ".json") for n in names]


@pytest.mark.parametrize("path", _valid_gframe_files(), ids=os.path.basename)
def test_fixture_roundtrip_is_byte_stable(path):
    text = read_text(path)
    assert dumps_gframe(loads_gframe(text)) == text


def test_other_kinds_roundtrip_byte_stable():
    for name in ["operator_identity2", "operator_random4", "operator_wrong_size3"]:
        text = read_text(os.path.join(HERE, name + ".json"))
        assert dumps_operator(loads_operator(text)) == text
    text = read_text(os.path.join(HERE, "vectors_mercedes.json"))
    assert dumps_vector_frame(loads_vector_frame(text)) == text
    for name in ["forms_identity_mercedes", "forms_scaled_random"]:
        text = read_text(os.path.join(HERE, name + ".json"))
        indices, forms = loads_forms(text)
        assert dumps_forms(forms, indices) == text


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 100_000))
def test_random_roundtrip_is_bit_exact(seed):
    f = random_instance(seed)
    text = dumps_gframe(f)
    g = loads_gframe(text)
    for a, b in zip(f.blocks, g.blocks):
        np.testing.assert_array_equal(a, b)
    assert dumps_gframe(g) == text


def test_elements_written_in_index_order():
    f = mercedes_benz()
    shuffled = type(f)(f.dim_u, (3, 1, 2), f.blocks)
    g = loads_gframe(dumps_gframe(shuffled))
    assert g.indices == (1, 2, 3)
    np.testing.assert_array_equal(g.block(3), f.blocks[0])


def test_zero_dimensional_element_roundtrip():
    f = type(mercedes_benz()).from_blocks([np.eye(2), np.zeros((0, 2))])
    text = dumps_gframe(f)
    assert loads_gframe(text).dims == (2, 0)
    assert dumps_gframe(loads_gframe(text)) == text


def test_vector_frame_roundtrip():
    vf = induced_sequence(mercedes_benz())
    back = loads_vector_frame(dumps_vector_frame(vf))
    assert back.labels == vf.labels
    np.testing.assert_array_equal(back.vectors, vf.vectors)


@pytest.mark.parametrize("name,field", [
    ("missing_dim_u", "dim_u"),
    ("wrong_row_length", "elements[0].matrix[1]"),
    ("wrong_dim_v", "elements[0].matrix"),
    ("duplicate_index", "elements[1].index"),
    ("bad_schema_version", "schema_version"),
    ("not_a_complex_pair", "elements[0].matrix[0][1]"),
])
def test_validation_errors_name_the_field(name, field):
    with pytest.raises(ValidationError) as exc:
        loads_gframe(read_text(os.path.join(HERE, name + ".json")))
    assert exc.value.field == field
    assert field in str(exc.value)


@pytest.mark.parametrize("name", ["malformed_syntax", "empty"])
def test_parse_errors_carry_position(name):
    with pytest.raises(ParseError) as exc:
        loads_gframe(read_text(os.path.join(HERE, name + ".json")))
    assert "line" in str(exc.value)


def test_non_spd_form_names_its_index():
    with pytest.raises(ValidationError) as exc:
        loads_forms(read_text(os.path.join(HERE, "forms_non_spd.json")))
    assert exc.value.field == "forms[index=2]"


def test_operator_must_be_square():
    text = dumps_operator(np.eye(2)).replace('"dim": 2', '"dim": 3')
    with pytest.raises(ValidationError):
        loads_operator(text)


def test_corpus_size():
    assert len(glob.glob(os.path.join(HERE, "*.json"))) >= 12
