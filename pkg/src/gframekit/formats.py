"""JSON interchange: g-frame, operator, forms and vector-frame files.

Complex numbers are ``[re, im]`` pairs. Writers emit a canonical layout
(fixed key order, elements ascending by index, one matrix row per line) so
that parse followed by dump reproduces a canonical file byte for byte.
"""

import json

import numpy as np

from .errors import ParseError, ValidationError
from .gframe import GFrame
from .induced import VectorFrame
from .splitting import BilinearFormFamily

SCHEMA_VERSION = "1.0"
SUPPORTED_VERSIONS = {"1.0"}


# -- encoding ---------------------------------------------------------------

def _num(x):
    return json.dumps(float(x) + 0.0)  # folds -0.0 into 0.0


def _encode_row(row):
    return "[" + ", ".join(f"[{_num(z.real)}, {_num(z.imag)}]" for z in row) + "]"


def _encode_matrix(m, indent):
    m = np.asarray(m, dtype=np.complex128)
    if m.shape[0] == 0:
        return "[]"
    pad = " " * indent
    rows = [pad + "  " + _encode_row(r) for r in m]
    return "[\n" + ",\n".join(rows) + "\n" + pad + "]"


def dumps_gframe(f):
    order = sorted(range(len(f)), key=lambda i: f.indices[i])
    parts = []
    for i in order:
        b = f.blocks[i]
        parts.append(
            "    {\n"
            f'      "index": {f.indices[i]},\n'
            f'      "dim_v": {b.shape[0]},\n'
            f'      "matrix": {_encode_matrix(b, 6)}\n'
            "    }"
        )
    elements = "[\n" + ",\n".join(parts) + "\n  ]" if parts else "[]"
    return (
        "{\n"
        f'  "schema_version": "{SCHEMA_VERSION}",\n'
        f'  "dim_u": {f.dim_u},\n'
        f'  "elements": {elements}\n'
        "}\n"
    )


def dumps_operator(m):
    m = np.asarray(m, dtype=np.complex128)
    return (
        "{\n"
        f'  "schema_version": "{SCHEMA_VERSION}",\n'
        '  "kind": "operator",\n'
        f'  "dim": {m.shape[0]},\n'
        f'  "matrix": {_encode_matrix(m, 2)}\n'
        "}\n"
    )


def dumps_forms(forms, indices):
    parts = []
    for j, b in sorted(zip(indices, forms.forms), key=lambda t: t[0]):
        parts.append(
            "    {\n"
            f'      "index": {j},\n'
            f'      "matrix": {_encode_matrix(b, 6)}\n'
            "    }"
        )
    body = "[\n" + ",\n".join(parts) + "\n  ]" if parts else "[]"
    return (
        "{\n"
        f'  "schema_version": "{SCHEMA_VERSION}",\n'
        '  "kind": "forms",\n'
        f'  "forms": {body}\n'
        "}\n"
    )


def dumps_vector_frame(vf):
    parts = []
    for (j, k), v in zip(vf.labels, vf.vectors):
        parts.append(f'    {{"j": {j}, "k": {k}, "vector": {_encode_row(v)}}}')
    body = "[\n" + ",\n".join(parts) + "\n  ]" if parts else "[]"
    return (
        "{\n"
        f'  "schema_version": "{SCHEMA_VERSION}",\n'
        '  "kind": "vector_frame",\n'
        f'  "dim": {vf.dim},\n'
        f'  "vectors": {body}\n'
        "}\n"
    )


# -- decoding ---------------------------------------------------------------

def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _require(obj, key, kind, where):
    if not isinstance(obj, dict):
        raise ValidationError(where or "<root>", "expected an object")
    if key not in obj:
        raise ValidationError(f"{where}.{key}" if where else key, "missing field")
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ValidationError(f"{where}.{key}" if where else key, f"expected an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise ValidationError(f"{where}.{key}" if where else key, "expected a list")
    if kind is str and not isinstance(value, str):
        raise ValidationError(f"{where}.{key}" if where else key, "expected a string")
    return value


def _check_version(obj):
    version = _require(obj, "schema_version", str, "")
    if version not in SUPPORTED_VERSIONS:
        raise ValidationError("schema_version", f"unsupported version {version!r}")


def _complex(z, where):
    if (
        not isinstance(z, list)
        or len(z) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in z)
    ):
        raise ValidationError(where, f"expected an [re, im] pair, got {z!r}")
    value = complex(float(z[0]), float(z[1]))
    if not np.isfinite(value):
        raise ValidationError(where, "non-finite entry")
    return value


def _decode_row(row, cols, where):
    if not isinstance(row, list):
        raise ValidationError(where, "expected a list of [re, im] pairs")
    if len(row) != cols:
        raise ValidationError(where, f"expected {cols} entries, got {len(row)}")
    return [_complex(z, f"{where}[{c}]") for c, z in enumerate(row)]


def _decode_matrix(rows, shape, where):
    if not isinstance(rows, list):
        raise ValidationError(where, "expected a list of rows")
    if len(rows) != shape[0]:
        raise ValidationError(where, f"expected {shape[0]} rows, got {len(rows)}")
    data = [_decode_row(r, shape[1], f"{where}[{i}]") for i, r in enumerate(rows)]
    return np.array(data, dtype=np.complex128).reshape(shape)


def loads_gframe(text):
    obj = _loads(text)
    _check_version(obj)
    n = _require(obj, "dim_u", int, "")
    if n < 1:
        raise ValidationError("dim_u", "must be positive")
    elements = _require(obj, "elements", list, "")
    indices, blocks = [], []
    for i, el in enumerate(elements):
        where = f"elements[{i}]"
        j = _require(el, "index", int, where)
        m = _require(el, "dim_v", int, where)
        if m < 0:
            raise ValidationError(f"{where}.dim_v", "must be nonnegative")
        if j in indices:
            raise ValidationError(f"{where}.index", f"duplicate index {j}")
        blocks.append(_decode_matrix(_require(el, "matrix", list, where), (m, n), f"{where}.matrix"))
        indices.append(j)
    order = sorted(range(len(indices)), key=lambda i: indices[i])
    return GFrame(n, tuple(indices[i] for i in order), tuple(blocks[i] for i in order))


def loads_operator(text):
    obj = _loads(text)
    _check_version(obj)
    n = _require(obj, "dim", int, "")
    return _decode_matrix(_require(obj, "matrix", list, ""), (n, n), "matrix")


def loads_forms(text):
    """Returns ``(indices, BilinearFormFamily)``; non-SPD forms name their index."""
    obj = _loads(text)
    _check_version(obj)
    entries = _require(obj, "forms", list, "")
    indices, mats = [], []
    for i, el in enumerate(entries):
        where = f"forms[{i}]"
        j = _require(el, "index", int, where)
        rows = _require(el, "matrix", list, where)
        m = len(rows)
        mats.append(_decode_matrix(rows, (m, m), f"{where}.matrix"))
        indices.append(j)
        try:
            BilinearFormFamily((mats[-1],))
        except ValidationError as exc:
            raise ValidationError(f"forms[index={j}]", exc.args[0].split(": ", 1)[1]) from exc
    order = sorted(range(len(indices)), key=lambda i: indices[i])
    return tuple(indices[i] for i in order), BilinearFormFamily(tuple(mats[i] for i in order))


def loads_vector_frame(text):
    obj = _loads(text)
    _check_version(obj)
    n = _require(obj, "dim", int, "")
    entries = _require(obj, "vectors", list, "")
    labels, rows = [], []
    for i, el in enumerate(entries):
        where = f"vectors[{i}]"
        labels.append((_require(el, "j", int, where), _require(el, "k", int, where)))
        rows.append(_decode_row(_require(el, "vector", list, where), n, f"{where}.vector"))
    return VectorFrame(n, np.array(rows, dtype=np.complex128).reshape(len(rows), n), tuple(labels))


def read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
