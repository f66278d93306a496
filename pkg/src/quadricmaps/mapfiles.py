"""JSON map files: schema-checked, exact serialization of quadric maps.

The on-disk format is documented by schemas/mapfile.schema.json.  All
coefficients travel as exact expression or scalar strings; floats never
appear.  Validation reports every problem at once, each tagged with the
JSON path of the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from .automorphisms import AutParams
from .expressions import ExpressionError, format_poly, parse_expression
from .linalg import Matrix
from .maps import AnyMap, QuadricMap, RationalMap
from .polynomials import VariableSpace
from .quadrics import Hyperquadric
from .scalars import GaussianRational, format_scalar, parse_scalar

SCHEMA_PATH = Path(__file__).parent / "schemas" / "mapfile.schema.json"


class MapFileError(ValueError):
    """Raised on schema violations; ``errors`` lists them with JSON paths."""

    def __init__(self, errors: Sequence[str]) -> None:
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


def _check_quadric(data: Any, path: str, errors: List[str]) -> None:
    if not isinstance(data, dict):
        errors.append(f"{path}: expected an object with n and ell")
        return
    for field in ("n", "ell"):
        if field not in data:
            errors.append(f"{path}.{field}: missing")
        elif not isinstance(data[field], int) or isinstance(data[field], bool):
            errors.append(f"{path}.{field}: expected an integer")
    extra = set(data) - {"n", "ell"}
    if extra:
        errors.append(f"{path}: unknown fields {sorted(extra)}")
    if isinstance(data.get("n"), int) and data["n"] < 2:
        errors.append(f"{path}.n: must be at least 2")
    if (
        isinstance(data.get("n"), int)
        and isinstance(data.get("ell"), int)
        and not 0 <= data["ell"] <= data["n"] - 1
    ):
        errors.append(f"{path}.ell: must lie in 0..n-1")


def validate_mapfile(data: Any) -> List[str]:
    """All schema violations, each prefixed with its JSON path."""
    errors: List[str] = []
    if not isinstance(data, dict):
        return ["$: expected a JSON object"]
    for field in ("source", "target", "f", "g"):
        if field not in data:
            errors.append(f"$.{field}: missing")
    known = {"source", "target", "f", "g", "denominator", "metadata"}
    extra = set(data) - known
    if extra:
        errors.append(f"$: unknown fields {sorted(extra)}")
    if "source" in data:
        _check_quadric(data["source"], "$.source", errors)
    if "target" in data:
        _check_quadric(data["target"], "$.target", errors)
    comps = data.get("f")
    if comps is not None:
        if not isinstance(comps, list) or any(not isinstance(c, str) for c in comps):
            errors.append("$.f: expected an array of expression strings")
    if "g" in data and not isinstance(data["g"], str):
        errors.append("$.g: expected an expression string")
    if "denominator" in data and not isinstance(data["denominator"], str):
        errors.append("$.denominator: expected an expression string")
    meta = data.get("metadata")
    if meta is not None and not isinstance(meta, dict):
        errors.append("$.metadata: expected an object")
    if errors:
        return errors

    target_n = data["target"].get("n")
    if isinstance(target_n, int) and len(data["f"]) != target_n - 1:
        errors.append(
            f"$.f: expected {target_n - 1} components for target n = {target_n}, "
            f"got {len(data['f'])}"
        )
    space = VariableSpace(data["source"]["n"])
    for idx, text in enumerate(data["f"]):
        try:
            parse_expression(text, space)
        except ExpressionError as exc:
            errors.append(f"$.f[{idx}]: {exc}")
    for field in ("g", "denominator"):
        if field in data:
            try:
                parse_expression(data[field], space)
            except ExpressionError as exc:
                errors.append(f"$.{field}: {exc}")
    return errors


def map_from_dict(data: Dict[str, Any]) -> AnyMap:
    errors = validate_mapfile(data)
    if errors:
        raise MapFileError(errors)
    source = Hyperquadric.standard(data["source"]["n"], data["source"]["ell"])
    target = Hyperquadric.standard(data["target"]["n"], data["target"]["ell"])
    space = source.space
    comps = tuple(parse_expression(t, space) for t in data["f"])
    comps = comps + (parse_expression(data["g"], space),)
    if "denominator" in data:
        den = parse_expression(data["denominator"], space)
        if not den.constant_term():
            raise MapFileError(["$.denominator: vanishes at the origin"])
        return RationalMap(source, target, comps, den)
    return QuadricMap(source, target, comps)


def map_to_dict(
    f: AnyMap, metadata: Optional[Dict[str, Any]] = None
) -> Dict[str, Any]:
    if isinstance(f, QuadricMap):
        comps = f.components
        den = None
    else:
        comps = f.numerators
        den = f.denominator
    data: Dict[str, Any] = {
        "source": {"n": f.source.n, "ell": f.source.num_negative},
        "target": {"n": f.target.n, "ell": f.target.num_negative},
        "f": [format_poly(c) for c in comps[:-1]],
        "g": format_poly(comps[-1]),
    }
    if den is not None:
        data["denominator"] = format_poly(den)
    if metadata:
        data["metadata"] = metadata
    return data


def load_map(path: Union[str, Path]) -> AnyMap:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise MapFileError([f"$: not valid JSON ({exc})"]) from exc
    return map_from_dict(data)


def save_map(
    f: AnyMap,
    path: Union[str, Path],
    metadata: Optional[Dict[str, Any]] = None,
) -> None:
    data = map_to_dict(f, metadata)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(data, handle, indent=2, sort_keys=True)
        handle.write("\n")


# -- automorphism parameters ------------------------------------------


def autparams_to_dict(params: AutParams) -> Dict[str, Any]:
    return {
        "lam": format_scalar(GaussianRational(params.lam)),
        "eps": params.eps,
        "a": [format_scalar(x) for x in params.a],
        "r": format_scalar(GaussianRational(params.r)),
        "u": [
            [format_scalar(params.u[i, j]) for j in range(params.u.shape[1])]
            for i in range(params.u.shape[0])
        ],
    }


def autparams_from_dict(data: Dict[str, Any]) -> AutParams:
    errors = []
    for field in ("lam", "eps", "a", "r", "u"):
        if field not in data:
            errors.append(f"$.{field}: missing")
    if errors:
        raise MapFileError(errors)
    lam = parse_scalar(data["lam"])
    r = parse_scalar(data["r"])
    if lam.im or r.im:
        raise MapFileError(["$: lam and r must be real"])
    u = Matrix([[parse_scalar(x) for x in row] for row in data["u"]])
    return AutParams(
        lam.re, data["eps"], tuple(parse_scalar(x) for x in data["a"]), r.re, u
    )
