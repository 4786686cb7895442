"""JSON input parsing for complexes and simplicial posets."""

from __future__ import annotations

import json
from typing import Any, Union

from .errors import ValidationError
from .simplicial import ColoredComplex, complex_from_facets
from .stretch import SimplicialPoset, parse_poset

Parsed = Union[ColoredComplex, SimplicialPoset]


def _names(value: Any, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, (str, int)) for x in value):
        raise ValidationError(f"{what} must be a list of vertex names")
    return [str(x) for x in value]


def complex_from_json(data: dict) -> ColoredComplex:
    if "vertices" not in data or "facets" not in data:
        raise ValidationError("complex input needs 'vertices' and 'facets'")
    vertices = _names(data["vertices"], "'vertices'")
    if not isinstance(data["facets"], list):
        raise ValidationError("'facets' must be a list")
    facets = [_names(f, f"facet {n}") for n, f in enumerate(data["facets"])]
    partition = data.get("partition")
    if partition is not None:
        if not isinstance(partition, list):
            raise ValidationError("'partition' must be a list of blocks")
        partition = [_names(b, f"partition block {n + 1}") for n, b in enumerate(partition)]
    return complex_from_facets(vertices, facets, partition)


def parse_input(text: str) -> Parsed:
    """A complex ({vertices, facets, partition?}) or a poset ({elements})."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(data, dict):
        raise ValidationError("input must be a JSON object")
    if "elements" in data:
        return parse_poset(data)
    return complex_from_json(data)
