"""JSON encoding of spinors and tensor sets.  Complex numbers are ``[re, im]``."""

from __future__ import annotations

import json

import numpy as np

from .algebra import TENSOR_PAIRS
from .decomposition import Spinor4, TensorSet

COMPONENT_ORDER = {
    "spinor": ["A", "B", "C", "D"],
    "vector": [0, 1, 2, 3],
    "tensor": ["".join(map(str, p)) for p in TENSOR_PAIRS],
}


class SchemaError(ValueError):
    """Input parsed as JSON but does not match the expected shape."""


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def complex_from_json(x, where: str = "value") -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if (
        isinstance(x, list)
        and len(x) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)
    ):
        return complex(x[0], x[1])
    raise SchemaError(f"{where}: expected [re, im], got {x!r}")


def spinor_to_json(phi: Spinor4) -> list:
    return [complex_to_json(z) for z in phi.data]


def spinor_from_json(x, where: str = "spinor") -> Spinor4:
    if not isinstance(x, list) or len(x) != 4:
        raise SchemaError(f"{where}: expected 4 components")
    return Spinor4([complex_from_json(v, f"{where}[{i}]") for i, v in enumerate(x)])


def tensorset_to_json(T: TensorSet) -> dict:
    return {
        "scalar": complex_to_json(T.scalar),
        "pseudoscalar": complex_to_json(T.pseudoscalar),
        "vector": [complex_to_json(z) for z in T.vector],
        "pseudovector": [complex_to_json(z) for z in T.pseudovector],
        "tensor": [complex_to_json(z) for z in T.tensor],
    }


def tensorset_from_json(d) -> TensorSet:
    if not isinstance(d, dict):
        raise SchemaError("tensor set must be an object")
    try:
        vals = {k: d[k] for k in ("scalar", "pseudoscalar", "vector", "pseudovector", "tensor")}
    except KeyError as exc:
        raise SchemaError(f"tensor set is missing {exc.args[0]!r}") from None
    sizes = {"vector": 4, "pseudovector": 4, "tensor": 6}
    arrays = {}
    for name, n in sizes.items():
        if not isinstance(vals[name], list) or len(vals[name]) != n:
            raise SchemaError(f"{name}: expected {n} components")
        arrays[name] = [complex_from_json(v, f"{name}[{i}]") for i, v in enumerate(vals[name])]
    return TensorSet(
        complex_from_json(vals["scalar"], "scalar"),
        complex_from_json(vals["pseudoscalar"], "pseudoscalar"),
        arrays["vector"],
        arrays["pseudovector"],
        arrays["tensor"],
    )


def spinor_list_from_json(doc) -> list[Spinor4]:
    """Accepts a bare list of spinors or ``{"spinors": [...]}``."""
    if isinstance(doc, dict):
        if "spinors" not in doc:
            raise SchemaError("expected a list of spinors or an object with a 'spinors' key")
        doc = doc["spinors"]
    if not isinstance(doc, list):
        raise SchemaError("expected a list of spinors")
    return [spinor_from_json(x, f"spinors[{i}]") for i, x in enumerate(doc)]


def _default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, (complex, np.complexfloating)):
        return complex_to_json(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj) -> str:
    """Canonical text: sorted keys, fixed indentation, repr-exact floats."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_default, allow_nan=False) + "\n"
