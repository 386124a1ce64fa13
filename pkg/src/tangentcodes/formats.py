"""JSON file formats.  Elements are written as literals, polynomials as text."""

from __future__ import annotations

import json
from typing import Any, Sequence

from .codes import LinearCode
from .construct import CodeFamily, Morphism
from .decode import DecoderTables, TupleTable
from .gf import Field, FieldError
from .poly import MultiPoly, PolyError, PolyMatrix, parse_poly
from .variety import AffineVariety, GraphSection


class FormatError(ValueError):
    pass


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def field_header(F: Field) -> dict:
    return {"p": F.p, "M": F.M, "modulus": list(F.modulus)}


def field_from(doc: dict, ambient: Field | None = None) -> Field:
    """The ambient field recorded in a document, checked against ``ambient``."""
    if "M" in doc:
        mod = doc.get("modulus")
        try:
            F = Field(int(doc["p"]), int(doc["M"]), mod)
        except (FieldError, ValueError) as exc:
            raise FormatError(str(exc)) from exc
        if ambient is not None and ambient != F:
            raise FormatError(f"file ambient {F} differs from requested {ambient}")
        return F
    if ambient is None:
        raise FormatError("file does not record the ambient field; pass --ambient")
    if int(doc.get("p", ambient.p)) != ambient.p:
        raise FormatError("characteristic mismatch between file and ambient")
    return ambient


def elem_out(F: Field, x: int):
    return F.to_json(x)


def elem_in(F: Field, lit) -> int:
    try:
        return F.parse(lit)
    except FieldError as exc:
        raise FormatError(str(exc)) from exc


def vec_out(F: Field, v: Sequence[int]) -> list:
    return [F.to_json(x) for x in v]


def vec_in(F: Field, v) -> list[int]:
    if isinstance(v, str):
        v = split_literals(v)
    return [elem_in(F, x) for x in v]


def mat_out(F: Field, A: Sequence[Sequence[int]]) -> list:
    return [vec_out(F, r) for r in A]


def mat_in(F: Field, A) -> list[list[int]]:
    return [vec_in(F, r) for r in A]


def split_literals(text: str) -> list[str]:
    """Split ``"1,[0,1],g^2"`` at top-level commas."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    if out == [""]:
        return []
    if "" in out:
        raise FormatError(f"empty entry in {text!r}")
    return out


def poly_in(F: Field, text: str, n: int) -> MultiPoly:
    try:
        return parse_poly(F, text, n)
    except (PolyError, FieldError) as exc:
        raise FormatError(f"bad polynomial {text!r}: {exc}") from exc


# --- codes ------------------------------------------------------------------------------

def code_to_json(C: LinearCode) -> dict:
    d = field_header(C.field)
    d.update({"m_sub": C.m, "n": C.n, "parity_check": mat_out(C.field, C.H)})
    return d


def code_from_json(doc: dict, ambient: Field | None = None) -> LinearCode:
    F = field_from(doc, ambient)
    try:
        n = int(doc["n"])
        H = mat_in(F, doc["parity_check"])
        return LinearCode(F, n, H, int(doc["m_sub"]) if "m_sub" in doc else None)
    except KeyError as exc:
        raise FormatError(f"code file lacks {exc}") from exc


# --- varieties ----------------------------------------------------------------------------

def variety_to_json(X: AffineVariety) -> dict:
    d = field_header(X.field)
    d.update({"e": X.e, "n": X.n, "generators": [f.to_text() for f in X.F]})
    if X.dim_hint is not None:
        d["dim_hint"] = X.dim_hint
    if X.section is not None:
        d["section"] = {"free": [i + 1 for i in X.section.free],
                        "dependent": {str(i + 1): g.to_text() for i, g in sorted(X.section.dependent.items())}}
    meta = {k: v for k, v in X.meta.items() if not k.startswith("_")}
    if meta:
        d["meta"] = _jsonable(X.field, _elements_out(X.field, _shift_indices(meta, 1)))
    return d


_ELEM_VECS = ("word", "universal_word")
_ELEM_MATS = ("normalized_parity", "parity")


def _elements_out(F: Field, meta: dict) -> dict:
    out = dict(meta)
    for key in _ELEM_VECS:
        if key in out:
            out[key] = vec_out(F, out[key])
    for key in _ELEM_MATS:
        if key in out:
            out[key] = mat_out(F, out[key])
    if "lambda" in out:
        out["lambda"] = {i: F.to_json(v) for i, v in out["lambda"].items()}
    return out


def _elements_in(F: Field, meta: dict) -> dict:
    out = dict(meta)
    for key in _ELEM_VECS:
        if key in out:
            out[key] = vec_in(F, out[key])
    for key in _ELEM_MATS:
        if key in out:
            out[key] = mat_in(F, out[key])
    if "lambda" in out:
        out["lambda"] = {i: elem_in(F, v) for i, v in out["lambda"].items()}
    return out


# coordinate-valued metadata is 0-based in memory and 1-based on disk
_INDEX_LISTS = ("alpha", "sigma")
_INDEX_SCALARS = ("sigma_nu",)
_INDEX_KEYED = ("lambda",)


def _shift_indices(meta: dict, k: int) -> dict:
    out = dict(meta)
    for key in _INDEX_LISTS:
        if key in out:
            out[key] = [int(i) + k for i in out[key]]
    for key in _INDEX_SCALARS:
        if key in out:
            out[key] = int(out[key]) + k
    for key in _INDEX_KEYED:
        if key in out:
            out[key] = {int(i) + k: v for i, v in out[key].items()}
    return out


def _jsonable(F: Field, obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(F, v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(F, v) for v in obj]
    if isinstance(obj, MultiPoly):
        return obj.to_text()
    return obj


def variety_from_json(doc: dict, ambient: Field | None = None) -> AffineVariety:
    F = field_from(doc, ambient)
    try:
        n = int(doc["n"])
        gens = [poly_in(F, g, n) for g in doc["generators"]]
        e = int(doc.get("e", 1))
    except KeyError as exc:
        raise FormatError(f"variety file lacks {exc}") from exc
    section = None
    if "section" in doc:
        s = doc["section"]
        section = GraphSection(tuple(int(i) - 1 for i in s["free"]),
                               {int(i) - 1: poly_in(F, g, n) for i, g in s["dependent"].items()})
    meta = _elements_in(F, _shift_indices(dict(doc.get("meta", {})), -1))
    return AffineVariety(F, e, gens, doc.get("dim_hint"), section, meta)


# --- families and morphisms ----------------------------------------------------------------

def family_to_json(fam: CodeFamily) -> dict:
    d = field_header(fam.field)
    d.update({"q": fam.q, "points": mat_out(fam.field, fam.points),
              "matrices": [mat_out(fam.field, H) for H in fam.matrices]})
    return d


def family_from_json(doc: dict, ambient: Field | None = None) -> CodeFamily:
    F = field_from(doc, ambient)
    pts = [tuple(vec_in(F, a)) for a in doc["points"]]
    mats = [mat_in(F, H) for H in doc["matrices"]]
    return CodeFamily(F, int(doc.get("q", F.p)), pts, mats)


def morphism_to_json(mor: Morphism) -> dict:
    F = mor.components[0].field
    d = field_header(F)
    d.update({"n": mor.n, "components": [f.to_text() for f in mor.components]})
    if mor.excluded is not None:
        d["excluded"] = mor.excluded.to_text()
    return d


def morphism_from_json(doc: dict, ambient: Field | None = None) -> Morphism:
    F = field_from(doc, ambient)
    n = int(doc["n"])
    comps = [poly_in(F, f, n) for f in doc["components"]]
    exc = poly_in(F, doc["excluded"], n) if "excluded" in doc else None
    return Morphism(comps, exc)


# --- decoder tables ----------------------------------------------------------------------------

def _ij(t: Sequence[int]) -> list[int]:
    return [c + 1 for c in t]


def tables_to_json(T: DecoderTables) -> dict:
    d = {"variety": variety_to_json(T.X), "t": T.t, "tuples": [], "pairs": []}
    for i, tt in T.tuples.items():
        entry = {"i": _ij(i)}
        if tt.error:
            entry["error"] = tt.error
        else:
            entry["eliminants"] = [g.to_text() for g in tt.eliminants]
            if tt.cofactors is not None:
                entry["cofactors"] = tt.cofactors.to_text()
        d["tuples"].append(entry)
    for (j, i), D in T.delta.items():
        d["pairs"].append({"j": _ij(j), "i": _ij(i), "delta": D.to_text(),
                           "P": [[g.to_text() for g in row] for row in T.P[(j, i)]]})
    return d


def tables_from_json(doc: dict, ambient: Field | None = None) -> DecoderTables:
    from itertools import combinations
    from .poly import jacobian

    X = variety_from_json(doc["variety"], ambient)
    F, n = X.field, X.n
    t = int(doc["t"])
    tuples = {}
    for entry in doc["tuples"]:
        i = tuple(c - 1 for c in entry["i"])
        if "error" in entry:
            tuples[i] = TupleTable(i, [], None, None, entry["error"])
            continue
        polys = [poly_in(F, g, n) for g in entry["eliminants"]]
        cof = None
        if "cofactors" in entry:
            cof = PolyMatrix([[poly_in(F, g, n) for g in row] for row in entry["cofactors"]])
        tuples[i] = TupleTable(i, polys, jacobian(polys), cof)
    delta, P = {}, {}
    for pr in doc["pairs"]:
        key = (tuple(c - 1 for c in pr["j"]), tuple(c - 1 for c in pr["i"]))
        delta[key] = poly_in(F, pr["delta"], n)
        P[key] = [[poly_in(F, g, n) for g in row] for row in pr["P"]]
    rows = list(combinations(range(X.m), t))
    return DecoderTables(X, t, tuples, rows, delta, P)
