"""Interchange formats: canonical JSON for algebras, pairs, modules and
spectra.

All coefficients are exact integer fraction pairs {num, den}; complex
coefficients carry coeff_re/coeff_im (or re/im for raw scalars).
Serialization is canonical: sorted keys, fixed separators, a trailing
newline, and deterministic list orders derived from the objects, so
parse -> emit is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import BigradedAlgebra
from .exactlin import DenseMatrix, Scalar, ZERO
from .gkcoh import AdmissibleModule, ModuleGenerator, ReductivePair

__all__ = [
    "InputError",
    "canonical_dumps",
    "detect_kind",
    "load_document",
    "parse_document",
    "algebra_to_doc",
    "algebra_from_doc",
    "pair_to_doc",
    "pair_from_doc",
    "module_to_doc",
    "module_from_doc",
    "spectrum_to_doc",
    "spectrum_from_doc",
    "scalar_str",
]


class InputError(ValueError):
    """Malformed or inconsistent input document."""


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _frac_doc(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _frac_parse(doc) -> Fraction:
    try:
        return Fraction(int(doc["num"]), int(doc["den"]))
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad fraction {doc!r}: {exc}") from None


def _coeff_doc(s: Scalar) -> dict:
    return {"coeff_re": _frac_doc(s.re), "coeff_im": _frac_doc(s.im)}


def _coeff_parse(doc) -> Scalar:
    return Scalar(_frac_parse(doc["coeff_re"]), _frac_parse(doc["coeff_im"]))


def _scalar_doc(s: Scalar) -> dict:
    return {"re": _frac_doc(s.re), "im": _frac_doc(s.im)}


def _scalar_parse(doc) -> Scalar:
    try:
        return Scalar(_frac_parse(doc["re"]), _frac_parse(doc["im"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad scalar {doc!r}: {exc}") from None


def _matrix_doc(m: DenseMatrix) -> list:
    return [[_scalar_doc(m.at(i, j)) for j in range(m.cols)]
            for i in range(m.rows)]


def _matrix_parse(doc, rows=None, cols=None) -> DenseMatrix:
    if not isinstance(doc, list):
        raise InputError("matrix must be a list of rows")
    data = [[_scalar_parse(x) for x in row] for row in doc]
    if rows is not None and len(data) != rows:
        raise InputError(f"matrix has {len(data)} rows, expected {rows}")
    if data and cols is not None and len(data[0]) != cols:
        raise InputError(f"matrix has {len(data[0])} cols, expected {cols}")
    if not data:
        return DenseMatrix.zero(rows or 0, cols or 0)
    return DenseMatrix.from_rows(data)


def scalar_str(s: Scalar) -> str:
    return str(s)


# -- algebra -----------------------------------------------------------------


def algebra_to_doc(a: BigradedAlgebra) -> dict:
    products = []
    for (i, j) in sorted(a._products):
        entry = a._products[(i, j)]
        result = [dict(name=a.names[k], **_coeff_doc(c))
                  for k, c in sorted(entry.items())]
        products.append({"left": a.names[i], "right": a.names[j],
                         "result": result})
    conjugation = []
    for j in range(a.n):
        col = a.conj_matrix.column(j)
        result = [dict(name=a.names[k], **_coeff_doc(c))
                  for k, c in enumerate(col) if not c.is_zero()]
        conjugation.append({"of": a.names[j], "result": result})
    doc = {
        "kind": "algebra",
        "name": a.name,
        "g": a.g,
        "dense_leaf": a.dense_leaf,
        "basis": [{"name": nm, "p": p, "q": q}
                  for nm, (p, q) in zip(a.names, a.bidegrees)],
        "products": products,
        "conjugation": conjugation,
        "nu": [dict(name=a.names[k], **_coeff_doc(c))
               for k, c in enumerate(a.nu) if not c.is_zero()],
    }
    if a.kahler is not None:
        doc["kahler"] = [dict(name=a.names[k], **_coeff_doc(c))
                         for k, c in enumerate(a.kahler) if not c.is_zero()]
    return doc


def algebra_from_doc(doc) -> BigradedAlgebra:
    try:
        g = int(doc["g"])
        basis = doc["basis"]
        names = [str(b["name"]) for b in basis]
        bidegrees = [(int(b["p"]), int(b["q"])) for b in basis]
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad algebra header: {exc}") from None
    if len(set(names)) != len(names):
        raise InputError("duplicate basis names")
    index = {nm: t for t, nm in enumerate(names)}

    def idx(nm):
        if nm not in index:
            raise InputError(f"unknown basis element {nm!r}")
        return index[nm]

    products = {}
    for p in doc.get("products", []):
        key = (idx(p["left"]), idx(p["right"]))
        if key in products:
            raise InputError(f"duplicate product entry for {p['left']},"
                             f" {p['right']}")
        products[key] = {idx(r["name"]): _coeff_parse(r)
                         for r in p.get("result", [])}
    n = len(names)
    conj_cols = [[ZERO] * n for _ in range(n)]
    for c in doc.get("conjugation", []):
        j = idx(c["of"])
        for r in c.get("result", []):
            conj_cols[j][idx(r["name"])] = _coeff_parse(r)
    conj = DenseMatrix.from_columns(conj_cols, rows=n)
    nu = [ZERO] * n
    for e in doc.get("nu", []):
        nu[idx(e["name"])] = _coeff_parse(e)
    kahler = None
    if doc.get("kahler"):
        kahler = [ZERO] * n
        for e in doc["kahler"]:
            kahler[idx(e["name"])] = _coeff_parse(e)
    return BigradedAlgebra(
        g, names, bidegrees, products, conj, nu,
        dense_leaf=bool(doc.get("dense_leaf", True)),
        name=str(doc.get("name", "")),
        kahler=tuple(kahler) if kahler is not None else None)


# -- reductive pair ----------------------------------------------------------


def pair_to_doc(p: ReductivePair) -> dict:
    constants = []
    for i in range(p.dim):
        for j in range(i + 1, p.dim):
            vec = p.bracket_basis(i, j)
            for k, c in enumerate(vec):
                if c.is_zero():
                    continue
                if not c.is_real():
                    raise InputError("pair structure constants must be real")
                constants.append({"i": i, "j": j, "k": k,
                                  "num": c.re.numerator,
                                  "den": c.re.denominator})
    return {
        "kind": "pair",
        "name": p.name,
        "basis": list(p.names),
        "structure_constants": constants,
        "k_indices": list(p.k_indices),
        "p_indices": list(p.p_indices),
        "B": [[_frac_doc(p.b_form.at(i, j).re) for j in range(p.dim)]
              for i in range(p.dim)],
        "z0": [_frac_doc(x.re) for x in p.z0],
    }


def pair_from_doc(doc) -> ReductivePair:
    try:
        names = [str(x) for x in doc["basis"]]
        dim = len(names)
        brackets = {}
        for sc in doc["structure_constants"]:
            i, j, k = int(sc["i"]), int(sc["j"]), int(sc["k"])
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise InputError("structure constant index out of range")
            vec = list(brackets.get((i, j), (ZERO,) * dim))
            vec[k] = vec[k] + Scalar(Fraction(int(sc["num"]), int(sc["den"])))
            brackets[(i, j)] = tuple(vec)
        b = DenseMatrix.from_rows(
            [[Scalar(_frac_parse(x)) for x in row] for row in doc["B"]])
        z0 = tuple(Scalar(_frac_parse(x)) for x in doc["z0"])
        return ReductivePair(names, brackets, tuple(doc["k_indices"]),
                             tuple(doc["p_indices"]), b, z0,
                             name=str(doc.get("name", "")))
    except (KeyError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad pair document: {exc}") from None


# -- module ------------------------------------------------------------------


def module_to_doc(m: AdmissibleModule) -> dict:
    gen_order = {g.name: t for t, g in enumerate(m.generators)}
    weight_docs = []
    for w in m.sorted_weights:
        actions = []
        for (gname, from_w), mat in sorted(
                m.actions.items(),
                key=lambda kv: (gen_order[kv[0][0]], kv[0][1])):
            gen = m.gen_by_name[gname]
            if from_w + gen.shift != w:
                continue
            actions.append({"generator": gname, "from_weight": from_w,
                            "matrix": _matrix_doc(mat)})
        weight_docs.append({
            "weight": w,
            "dim": m.weights[w],
            "form": _matrix_doc(m.forms[w]),
            "actions": actions,
        })
    return {
        "kind": "module",
        "name": m.name,
        "pair": m.pair_name,
        "window": m.window,
        "unitary": m.unitary,
        "generators": [{"name": g.name,
                        "coords": [_scalar_doc(c) for c in g.coords],
                        "shift": g.shift} for g in m.generators],
        "weights": weight_docs,
    }


def module_from_doc(doc) -> AdmissibleModule:
    try:
        generators = tuple(
            ModuleGenerator(str(g["name"]),
                            tuple(_scalar_parse(c) for c in g["coords"]),
                            int(g["shift"]))
            for g in doc["generators"])
        gen_names = {g.name for g in generators}
        weights = {}
        forms = {}
        actions = {}
        for wd in doc["weights"]:
            w = int(wd["weight"])
            d = int(wd["dim"])
            weights[w] = d
            forms[w] = _matrix_parse(wd["form"], rows=d, cols=d)
            for act in wd.get("actions", []):
                gname = str(act["generator"])
                if gname not in gen_names:
                    raise InputError(f"action references unknown generator "
                                     f"{gname!r}")
                actions[(gname, int(act["from_weight"]))] = \
                    _matrix_parse(act["matrix"])
        return AdmissibleModule(
            name=str(doc.get("name", "")),
            pair_name=str(doc.get("pair", "")),
            window=int(doc["window"]),
            weights=weights, forms=forms, generators=generators,
            actions=actions, unitary=bool(doc.get("unitary", True)))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad module document: {exc}") from None


# -- spectrum ----------------------------------------------------------------


def spectrum_to_doc(entries) -> list:
    return [{"module": e.module, "multiplicity": e.multiplicity,
             "k2_inv_dim": e.k2_inv_dim} for e in entries]


def spectrum_from_doc(doc):
    from .assembler import SpectrumEntry

    if not isinstance(doc, list):
        raise InputError("spectrum must be a JSON list")
    out = []
    for e in doc:
        try:
            out.append(SpectrumEntry(module=str(e["module"]),
                                     multiplicity=int(e["multiplicity"]),
                                     k2_inv_dim=int(e["k2_inv_dim"])))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad spectrum entry {e!r}: {exc}") from None
    return out


# -- kind dispatch -----------------------------------------------------------


def detect_kind(doc) -> str:
    if isinstance(doc, list):
        return "spectrum"
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object or list")
    kind = doc.get("kind")
    if kind in ("algebra", "pair", "module", "spectrum"):
        return kind
    if "basis" in doc and "g" in doc:
        return "algebra"
    if "structure_constants" in doc:
        return "pair"
    if "weights" in doc and "generators" in doc:
        return "module"
    raise InputError("cannot determine document kind")


def parse_document(doc):
    kind = detect_kind(doc)
    if kind == "algebra":
        return kind, algebra_from_doc(doc)
    if kind == "pair":
        return kind, pair_from_doc(doc)
    if kind == "module":
        return kind, module_from_doc(doc)
    return kind, spectrum_from_doc(doc)


def load_document(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return parse_document(doc)
