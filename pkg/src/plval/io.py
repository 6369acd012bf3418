"""JSON codecs for complexes, functions, hat decompositions and reports.

All scalars travel as exact rational strings ("3/4", "-2").  Loading a
complex closes it under faces and validates it; any structural problem
surfaces as :class:`MalformedInput`.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Union

from .exact import format_rational, parse_rational
from .pl import PLFunction
from .simplicial import SimplicialComplex, validate

PathLike = Union[str, os.PathLike]


class MalformedInput(ValueError):
    """A file or JSON object does not describe a valid object."""


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def _parse_scalar(text) -> object:
    if not isinstance(text, str):
        raise MalformedInput(f"expected a rational string, got {text!r}")
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


def complex_to_dict(K: SimplicialComplex) -> dict:
    return K.as_dict()


def complex_from_dict(data, check_intersections: bool = True) -> SimplicialComplex:
    if not isinstance(data, dict):
        raise MalformedInput("complex must be a JSON object")
    try:
        n = data["ambient_dim"]
        raw_vertices = data["vertices"]
        raw_simplices = data["maximal_simplices"]
    except KeyError as exc:
        raise MalformedInput(f"complex is missing {exc.args[0]!r}") from None
    if type(n) is not int or n < 0:
        raise MalformedInput("ambient_dim must be a nonnegative integer")
    if not isinstance(raw_vertices, list) or not isinstance(raw_simplices, list):
        raise MalformedInput("vertices and maximal_simplices must be lists")
    vertices = []
    for v in raw_vertices:
        if not isinstance(v, list) or len(v) != n:
            raise MalformedInput(f"vertex {v!r} does not have {n} coordinates")
        vertices.append(tuple(_parse_scalar(c) for c in v))
    simplices = []
    for s in raw_simplices:
        if (
            not isinstance(s, list)
            or not s
            or any(type(i) is not int or not 0 <= i < len(vertices) for i in s)
            or len(set(s)) != len(s)
        ):
            raise MalformedInput(f"bad simplex {s!r}")
        simplices.append(tuple(sorted(s)))
    K = SimplicialComplex(n, vertices, simplices)
    problems = validate(K, check_intersections=check_intersections)
    if problems:
        raise MalformedInput("invalid complex: " + "; ".join(problems))
    return K


def function_to_dict(f: PLFunction, complex_ref=None) -> dict:
    """``complex_ref`` may be a path to store instead of the inline complex."""
    return {
        "complex": complex_ref if complex_ref is not None else f.triangulation.as_dict(),
        "values": [format_rational(v) for v in f.values],
    }


def function_from_dict(data, base_dir: PathLike = ".") -> PLFunction:
    if not isinstance(data, dict) or "complex" not in data or "values" not in data:
        raise MalformedInput("function must be an object with 'complex' and 'values'")
    ref = data["complex"]
    if isinstance(ref, str):
        K = load_complex(Path(base_dir) / ref)
    else:
        K = complex_from_dict(ref)
    values = data["values"]
    if not isinstance(values, list) or len(values) != len(K.vertices):
        raise MalformedInput("need exactly one value per vertex")
    return PLFunction(K, tuple(_parse_scalar(v) for v in values))


def _read_json(path: PathLike):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not JSON: {exc}") from None


def load_complex(path: PathLike) -> SimplicialComplex:
    return complex_from_dict(_read_json(path))


def load_function(path: PathLike) -> PLFunction:
    return function_from_dict(_read_json(path), base_dir=Path(path).parent)


def dumps_complex(K: SimplicialComplex) -> str:
    return _dumps(complex_to_dict(K))


def dumps_function(f: PLFunction) -> str:
    return _dumps(function_to_dict(f))


def save_complex(K: SimplicialComplex, path: PathLike) -> None:
    Path(path).write_text(dumps_complex(K), encoding="utf-8")


def save_function(f: PLFunction, path: PathLike) -> None:
    Path(path).write_text(dumps_function(f), encoding="utf-8")


def dumps_json(obj) -> str:
    """Reports and decompositions, which already know their own ``as_dict``."""
    return _dumps(obj.as_dict() if hasattr(obj, "as_dict") else obj)
