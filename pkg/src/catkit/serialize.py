"""Lossless JSON encoding of precategories, functors and presheaves."""
from __future__ import annotations

import json

from .functor import FinFunctor
from .groupoid import FinGroupoid
from .precat import FinPrecategory
from .yoneda import FinPresheaf

SCHEMA_VERSION = 1


def _lists(x):
    if isinstance(x, (tuple, list)):
        return [_lists(v) for v in x]
    return x


def _tuples(x):
    if isinstance(x, list):
        return tuple(_tuples(v) for v in x)
    return x


def _labels(x):
    if x is None:
        return None
    if isinstance(x, (tuple, list)):
        return [_labels(v) for v in x]
    return str(x)


def precat_to_dict(C: FinPrecategory, name: str | None = None) -> dict:
    G = C.paths
    return {
        "kind": "precategory",
        "name": name,
        "objects": [C.obj_label(a) for a in range(C.n)],
        "hom_sizes": _lists(C.hom_sizes),
        "identity": list(C.identity),
        "comp": _lists(C.comp),
        "morphism_labels": _labels(C.mor_labels),
        "paths": {
            "sizes": _lists(G.sizes),
            "refl": list(G.refl),
            "comp": _lists(G.comp),
            "inv": _lists(G.inv),
            "labels": _labels(G.labels),
        },
        "transport": _lists(C.transport),
    }


def precat_from_dict(d: dict) -> FinPrecategory:
    p = d["paths"]
    G = FinGroupoid(_tuples(p["sizes"]), tuple(p["refl"]), _tuples(p["comp"]), _tuples(p["inv"]), _tuples(p.get("labels")))
    return FinPrecategory(_tuples(d["hom_sizes"]), tuple(d["identity"]), _tuples(d["comp"]), G,
                          _tuples(d["transport"]), tuple(d["objects"]), _tuples(d.get("morphism_labels")))


def functor_to_dict(F: FinFunctor, name: str | None, dom: str, cod: str) -> dict:
    return {"kind": "functor", "name": name, "dom": dom, "cod": cod, "obj_map": list(F.obj_map),
            "hom_maps": _lists(F.hom_maps), "path_maps": _lists(F.path_maps)}


def functor_from_dict(d: dict, cats: dict) -> FinFunctor:
    return FinFunctor(cats[d["dom"]], cats[d["cod"]], tuple(d["obj_map"]), _tuples(d["hom_maps"]),
                      _tuples(d["path_maps"]), d.get("name"))


def presheaf_to_dict(P: FinPresheaf, name: str | None, base: str) -> dict:
    return {"kind": "presheaf", "name": name, "base": base, "carrier": list(P.carrier), "action": _lists(P.action),
            "element_labels": _labels(P.element_labels)}


def presheaf_from_dict(d: dict, cats: dict) -> FinPresheaf:
    return FinPresheaf(cats[d["base"]], tuple(d["carrier"]), _tuples(d["action"]), d.get("name"),
                       _tuples(d.get("element_labels")))


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=1, ensure_ascii=False)


def precat_to_json(C: FinPrecategory, name: str | None = None) -> str:
    return dumps({"schema_version": SCHEMA_VERSION, **precat_to_dict(C, name)})


def precat_from_json(text: str) -> FinPrecategory:
    d = json.loads(text)
    _check_version(d)
    return precat_from_dict(d)


def _check_version(d):
    v = d.get("schema_version")
    if v != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {v!r}, expected {SCHEMA_VERSION}")
