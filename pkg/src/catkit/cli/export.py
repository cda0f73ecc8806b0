"""DOT and JSON exporters, and the JSON loader."""
from __future__ import annotations

import json

from ..functor import FinFunctor, validate_functor
from ..precat import FinPrecategory, is_iso, validate_precategory
from ..serialize import (SCHEMA_VERSION, _check_version, dumps, functor_from_dict, functor_to_dict, precat_from_dict,
                         precat_to_dict, presheaf_from_dict, presheaf_to_dict)
from ..yoneda import FinPresheaf, validate_presheaf
from .dsl import Diagnostic, SourceFile, _owner
from .render import describe


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _precat_body(C: FinPrecategory, prefix="", indent="  "):
    out = []
    node = [_q(prefix + C.obj_label(a)) for a in range(C.n)]
    for a in range(C.n):
        out.append(f"{indent}{node[a]} [label={_q(C.obj_label(a))}];")
    for f in C.morphisms():
        if C.is_identity(f):
            continue
        style = ", color=blue, penwidth=2" if is_iso(C, f) else ""
        out.append(f"{indent}{node[f.src]} -> {node[f.tgt]} [label={_q(C.mor_label(f))}{style}];")
    G = C.paths
    for p in G.all_paths():
        if p.src == p.tgt and p.index == G.refl[p.src]:
            continue
        out.append(f"{indent}{node[p.src]} -> {node[p.tgt]} [label={_q(G.path_label(p))}, style=dashed];")
    return out


def export_dot(item, name: str = "item") -> str:
    """A DOT digraph.

    Precategories: objects are nodes, non-identity morphisms solid edges
    (isomorphisms bold blue), non-reflexivity paths dashed edges.
    Functors draw both categories as clusters joined by dotted object
    edges; presheaves draw one cluster of elements per object.
    """
    lines = [f"digraph {_q(name)} {{"]
    if isinstance(item, FinPrecategory):
        lines += _precat_body(item)
    elif isinstance(item, FinFunctor):
        for tag, C in (("dom", item.dom), ("cod", item.cod)):
            lines.append(f"  subgraph {_q('cluster_' + tag)} {{")
            lines.append(f"    label={_q(tag)};")
            lines += _precat_body(C, prefix=tag + ":", indent="    ")
            lines.append("  }")
        for a in range(item.dom.n):
            b = item.obj_map[a]
            lines.append(f"  {_q('dom:' + item.dom.obj_label(a))} -> {_q('cod:' + item.cod.obj_label(b))} "
                         "[style=dotted];")
    elif isinstance(item, FinPresheaf):
        A = item.base
        node = lambda a, x: _q(f"{A.obj_label(a)}:{item.element_label(a, x)}")  # noqa: E731
        for a in range(A.n):
            lines.append(f"  subgraph {_q('cluster_' + A.obj_label(a))} {{")
            lines.append(f"    label={_q(A.obj_label(a))};")
            for x in range(item.carrier[a]):
                lines.append(f"    {node(a, x)} [label={_q(item.element_label(a, x))}];")
            lines.append("  }")
        for f in A.morphisms():
            if A.is_identity(f):
                continue
            for x, y in enumerate(item.action[f.src][f.tgt][f.index]):
                lines.append(f"  {node(f.tgt, x)} -> {node(f.src, y)} [label={_q(A.mor_label(f))}];")
    else:
        raise TypeError(f"cannot draw {type(item).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def item_to_dict(sf: SourceFile, name: str) -> dict:
    item = sf.items[name]
    owner = {}
    if isinstance(item, FinPrecategory):
        return precat_to_dict(item, name)
    if isinstance(item, FinFunctor):
        return functor_to_dict(item, name, _owner(sf, owner, item.dom), _owner(sf, owner, item.cod))
    return presheaf_to_dict(item, name, _owner(sf, owner, item.base))


def export_json(sf: SourceFile) -> str:
    """Every item of ``sf`` in file order under a versioned envelope; keys sorted."""
    return dumps({"schema_version": SCHEMA_VERSION, "items": [item_to_dict(sf, k) for k in sf.items]})


def parse_json(text: str, path: str | None = None) -> SourceFile:
    """Inverse of :func:`export_json`; a bare precategory document is accepted too."""
    doc = json.loads(text)
    _check_version(doc)
    entries = doc["items"] if "items" in doc else [doc]
    cats = {d["name"]: precat_from_dict(d) for d in entries if d["kind"] == "precategory"}
    sf = SourceFile(path, text)
    for d in entries:
        name = d["name"]
        if name in sf.items:
            raise ValueError(f"duplicate item name {name!r}")
        if d["kind"] == "precategory":
            item, rep = cats[name], validate_precategory(cats[name])
        elif d["kind"] == "functor":
            item = functor_from_dict(d, cats)
            rep = validate_functor(item)
        elif d["kind"] == "presheaf":
            item = presheaf_from_dict(d, cats)
            rep = validate_presheaf(item)
        else:
            raise ValueError(f"unknown item kind {d['kind']!r}")
        sf.items[name] = item
        sf.positions[name] = (0, 0)
        sf.diagnostics[name] = [Diagnostic("error", 0, 0, f"{name}: {describe(item, v)}", v.law)
                                for v in rep.violations]
    return sf

