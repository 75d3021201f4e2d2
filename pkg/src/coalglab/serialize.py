"""JSON structure-constant formats.

Coalgebra files carry the field tag ("Q" or {"GF": p}), the dimension, the
nonzero comultiplication entries as [i, j, k, scalar] quadruples, and the
counit as a scalar list.  Scalars are exact strings ("-3/7", "4"); omitted
quadruples mean coefficient zero.  Presentation files carry a ring tag ("Q",
{"GF": p}, or "quaternion"), an optional precision (defaulting to twice the
maximal entry degree plus four), the generator count, and relation rows as
coefficient arrays (scalar lists, or lists of 4-component quaternion
coefficients in the skew case).
"""
from __future__ import annotations

import json
from typing import Optional

from .chainmod import Presentation, SeriesRing, default_precision
from .coalg.structures import Coalgebra
from .errors import ParseError
from .exactla import QQ, Field


def field_to_json(fld: Field):
    return "Q" if fld.is_rationals else {"GF": fld.p}


def field_from_json(data) -> Field:
    if data == "Q":
        return QQ
    if isinstance(data, dict) and set(data) == {"GF"}:
        try:
            return Field.gf(int(data["GF"]))
        except Exception as exc:
            raise ParseError(str(exc), context="field") from exc
    raise ParseError(f"unrecognized field tag {data!r}", context="field")


def parse_field_flag(text: str) -> Field:
    """Field from a command-line flag: Q, GF5, or GF(5)."""
    text = text.strip()
    if text in ("Q", "q"):
        return QQ
    if text.upper().startswith("GF"):
        digits = text[2:].strip("()")
        if digits.isdigit():
            return Field.gf(int(digits))
    raise ParseError(f"cannot parse field flag {text!r}", context="--field")


def _parse_scalar(fld: Field, text, where: str):
    try:
        if isinstance(text, bool):
            raise ValueError("booleans are not scalars")
        return fld.of(text if not isinstance(text, str) else text.strip())
    except Exception as exc:
        raise ParseError(f"bad scalar {text!r}: {exc}", context=where) from exc


def coalgebra_to_json(c: Coalgebra) -> dict:
    delta = []
    for i in range(c.dim):
        for j in range(c.dim):
            for k in range(c.dim):
                v = c.delta[i][j][k]
                if v != 0:
                    delta.append([i, j, k, str(v)])
    data = {
        "field": field_to_json(c.field),
        "dim": c.dim,
        "delta": delta,
        "eps": [str(x) for x in c.eps],
    }
    if c.basis_names:
        data["basis_names"] = list(c.basis_names)
    return data


def coalgebra_from_json(data: dict) -> Coalgebra:
    if not isinstance(data, dict):
        raise ParseError("coalgebra file must be a JSON object")
    for key in ("field", "dim", "delta", "eps"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", context="coalgebra file")
    fld = field_from_json(data["field"])
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise ParseError(f"dim must be a nonnegative integer, got {dim!r}")
    delta = [[[fld.zero] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for pos, quad in enumerate(data["delta"]):
        if not isinstance(quad, (list, tuple)) or len(quad) != 4:
            raise ParseError(f"delta entry {pos} is not an [i, j, k, scalar] quadruple")
        i, j, k, scalar = quad
        where = f"delta entry {pos}"
        for idx in (i, j, k):
            if not isinstance(idx, int) or not 0 <= idx < dim:
                raise ParseError(f"index {idx!r} out of range", context=where)
        if (i, j, k) in seen:
            raise ParseError(f"duplicate indices ({i}, {j}, {k})", context=where)
        seen.add((i, j, k))
        delta[i][j][k] = _parse_scalar(fld, scalar, where)
    eps = data["eps"]
    if not isinstance(eps, list) or len(eps) != dim:
        raise ParseError(f"eps must list {dim} scalars")
    eps = tuple(_parse_scalar(fld, x, f"eps entry {pos}") for pos, x in enumerate(eps))
    names = data.get("basis_names")
    if names is not None:
        if not isinstance(names, list) or len(names) != dim:
            raise ParseError("basis_names length does not match dim")
        names = tuple(str(x) for x in names)
    return Coalgebra(fld, dim, tuple(tuple(tuple(r) for r in s) for s in delta), eps, names)


def ring_from_json(tag, precision: Optional[int]) -> SeriesRing:
    if tag == "quaternion":
        return SeriesRing.quaternion(precision)
    fld = field_from_json(tag)
    return SeriesRing.commutative(fld, precision)


def presentation_to_json(p: Presentation) -> dict:
    ring = p.ring
    tag = "quaternion" if ring.kind == "quaternion" else field_to_json(ring.field)
    relations = []
    for row in p.relations:
        out_row = []
        for entry in row:
            if ring.kind == "quaternion":
                out_row.append([[str(x) for x in c.coeffs] for c in entry.coeffs])
            else:
                out_row.append([str(c) for c in entry.coeffs])
        relations.append(out_row)
    return {
        "ring": tag,
        "precision": ring.precision,
        "generators": p.generators,
        "relations": relations,
    }


def presentation_from_json(data: dict, precision_override: Optional[int] = None) -> Presentation:
    if not isinstance(data, dict):
        raise ParseError("presentation file must be a JSON object")
    for key in ("ring", "generators", "relations"):
        if key not in data:
            raise ParseError(f"missing key {key!r}", context="presentation file")
    generators = data["generators"]
    if not isinstance(generators, int) or generators < 0:
        raise ParseError("generators must be a nonnegative integer")
    relations = data["relations"]
    if not isinstance(relations, list):
        raise ParseError("relations must be a list of rows")
    precision = precision_override or data.get("precision") or default_precision(relations)
    tag = data["ring"]
    quaternion = tag == "quaternion"
    ring = ring_from_json(tag, precision)
    rows = []
    for rpos, row in enumerate(relations):
        if not isinstance(row, list) or len(row) != generators:
            raise ParseError(f"relation row {rpos} must list {generators} entries")
        out_row = []
        for epos, entry in enumerate(row):
            where = f"relation ({rpos}, {epos})"
            if not isinstance(entry, list):
                raise ParseError("entry must be a coefficient array", context=where)
            if len(entry) > ring.precision:
                raise ParseError(
                    f"{len(entry)} coefficients exceed precision {ring.precision}",
                    context=where)
            coeffs = []
            for c in entry:
                if quaternion:
                    if not isinstance(c, list) or len(c) != 4:
                        raise ParseError(
                            "quaternion coefficients need 4 components", context=where)
                    coeffs.append([_parse_scalar(QQ, x, where) for x in c])
                else:
                    coeffs.append(_parse_scalar(ring.field, c, where))
            out_row.append(ring.series(coeffs))
        rows.append(tuple(out_row))
    return Presentation.create(ring, generators, rows)


def load_json(text: str, context: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", context=context) from exc
