"""JSON documents for algebras and representations.

Algebra documents::

    {"kind": "action", "C": [...], "S": [...], "act": {c: {s: cs}}}
    {"kind": "biaction", "C": [...], "Sdown": [...], "Sup": [...],
     "act_down": {c: {s: cs}}, "act_up": {c: {t: ct}}}
    {"kind": "setband", "S": [...], "mul": {x: {y: xy}}}

Representation documents::

    {"kind": "action", "universe": [...], "Csets": {c: [atoms]},
     "Ssets": {s: {"down": [atoms], "up": [atoms]}}, "prime": false}
    biaction: "Csets", "Sdown": {s: [atoms]}, "Sup": {t: [atoms]}
    setband: "Ssets" only

Unknown keys are rejected; ``prime`` is optional and defaults to false.
"""

from __future__ import annotations

import json

from .core import Action, Biaction, FiniteAlgebra, SetBand, SetRepresentation, StructureError, atoms_of, mask_of

_ALGEBRA_KEYS = {
    "action": {"kind", "C", "S", "act"},
    "biaction": {"kind", "C", "Sdown", "Sup", "act_down", "act_up"},
    "setband": {"kind", "S", "mul"},
}
_REP_KEYS = {
    "action": ({"kind", "universe", "Csets", "Ssets"}, {"prime"}),
    "biaction": ({"kind", "universe", "Csets", "Sdown", "Sup"}, set()),
    "setband": ({"kind", "universe", "Ssets"}, set()),
}


def _check_keys(doc: dict, required: set, optional: set = frozenset()) -> None:
    if not isinstance(doc, dict):
        raise StructureError("document must be a JSON object")
    unknown = set(doc) - required - optional
    if unknown:
        raise StructureError(f"unknown keys: {', '.join(sorted(unknown))}")
    missing = required - set(doc)
    if missing:
        raise StructureError(f"missing keys: {', '.join(sorted(missing))}")


def _kind(doc) -> str:
    if not isinstance(doc, dict) or doc.get("kind") not in _ALGEBRA_KEYS:
        raise StructureError(f"unknown or missing kind: {doc.get('kind') if isinstance(doc, dict) else doc!r}")
    return doc["kind"]


def _table(rows: dict, row_labels, col_labels, out_labels, name: str) -> list[list[int]]:
    if not isinstance(rows, dict) or set(rows) != set(row_labels):
        raise StructureError(f"{name}: rows must be exactly {list(row_labels)}")
    out_index = {lab: i for i, lab in enumerate(out_labels)}
    table = []
    for r in row_labels:
        row = rows[r]
        if not isinstance(row, dict) or set(row) != set(col_labels):
            raise StructureError(f"{name}[{r!r}]: columns must be exactly {list(col_labels)}")
        try:
            table.append([out_index[row[c]] for c in col_labels])
        except (KeyError, TypeError):
            raise StructureError(f"{name}[{r!r}]: value is not a declared element") from None
    return table


def _label_list(doc, key) -> list[str]:
    v = doc[key]
    if not isinstance(v, list):
        raise StructureError(f"{key} must be a list")
    return v


def algebra_from_json(doc: dict) -> FiniteAlgebra:
    kind = _kind(doc)
    _check_keys(doc, _ALGEBRA_KEYS[kind])
    if kind == "action":
        C, S = _label_list(doc, "C"), _label_list(doc, "S")
        return Action(C, S, _table(doc["act"], C, S, C, "act"))
    if kind == "biaction":
        C, D, U = _label_list(doc, "C"), _label_list(doc, "Sdown"), _label_list(doc, "Sup")
        return Biaction(C, D, U, _table(doc["act_down"], C, D, C, "act_down"),
                        _table(doc["act_up"], C, U, C, "act_up"))
    S = _label_list(doc, "S")
    return SetBand(S, _table(doc["mul"], S, S, S, "mul"))


def _rows(table, row_labels, col_labels, out_labels) -> dict:
    return {r: {c: out_labels[table[i][j]] for j, c in enumerate(col_labels)}
            for i, r in enumerate(row_labels)}


def algebra_to_json(alg: FiniteAlgebra) -> dict:
    if isinstance(alg, Action):
        return {"kind": "action", "C": list(alg.c_labels), "S": list(alg.s_labels),
                "act": _rows(alg.table, alg.c_labels, alg.s_labels, alg.c_labels)}
    if isinstance(alg, Biaction):
        C = alg.c_labels
        return {"kind": "biaction", "C": list(C), "Sdown": list(alg.sdown_labels),
                "Sup": list(alg.sup_labels),
                "act_down": _rows(alg.table_down, C, alg.sdown_labels, C),
                "act_up": _rows(alg.table_up, C, alg.sup_labels, C)}
    S = alg.s_labels
    return {"kind": "setband", "S": list(S), "mul": _rows(alg.mul, S, S, S)}


def _atoms_dict(d: dict, universe, name: str) -> dict[str, int]:
    if not isinstance(d, dict):
        raise StructureError(f"{name} must be an object")
    out = {}
    for k, v in d.items():
        if not isinstance(v, list):
            raise StructureError(f"{name}[{k!r}] must be a list of atoms")
        out[k] = mask_of(v, universe)
    return out


def representation_from_json(doc: dict) -> SetRepresentation:
    kind = _kind(doc)
    required, optional = _REP_KEYS[kind]
    _check_keys(doc, required, optional)
    universe = _label_list(doc, "universe")
    prime = doc.get("prime", False)
    if not isinstance(prime, bool):
        raise StructureError("prime must be a boolean")
    if kind == "biaction":
        return SetRepresentation(kind, universe,
                                 c_sets=_atoms_dict(doc["Csets"], universe, "Csets"),
                                 down_sets=_atoms_dict(doc["Sdown"], universe, "Sdown"),
                                 up_sets=_atoms_dict(doc["Sup"], universe, "Sup"))
    pairs = {}
    if not isinstance(doc["Ssets"], dict):
        raise StructureError("Ssets must be an object")
    for lab, pair in doc["Ssets"].items():
        if not isinstance(pair, dict):
            raise StructureError(f"Ssets[{lab!r}] must be an object")
        _check_keys(pair, {"down", "up"})
        pairs[lab] = (mask_of(pair["down"], universe), mask_of(pair["up"], universe))
    c_sets = _atoms_dict(doc["Csets"], universe, "Csets") if kind == "action" else {}
    return SetRepresentation(kind, universe, c_sets=c_sets, s_pairs=pairs, prime=prime)


def representation_to_json(rep: SetRepresentation) -> dict:
    U = rep.universe
    doc: dict = {"kind": rep.kind, "universe": list(U)}
    if rep.kind != "setband":
        doc["Csets"] = {k: atoms_of(m, U) for k, m in rep.c_sets.items()}
    if rep.kind == "biaction":
        doc["Sdown"] = {k: atoms_of(m, U) for k, m in rep.down_sets.items()}
        doc["Sup"] = {k: atoms_of(m, U) for k, m in rep.up_sets.items()}
    else:
        doc["Ssets"] = {k: {"down": atoms_of(d, U), "up": atoms_of(u, U)}
                        for k, (d, u) in rep.s_pairs.items()}
    if rep.prime:
        doc["prime"] = True
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def load_document(path: str) -> dict:
    with open(path, encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise StructureError(f"{path}: malformed JSON ({e})") from None
