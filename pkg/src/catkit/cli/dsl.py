"""A small declarative language for precategories, functors and presheaves.

Example::

    precategory arrow {
      objects: a, b;
      hom a b: f;
    }

    functor F : arrow -> arrow {
      obj a => a;
      obj b => b;
      mor f => f;
    }

Names are bare words (letters, digits, ``_`` and ``'``) or double-quoted
strings.  ``id(x)`` and ``refl(x)`` name identities and reflexivity
paths; neither is ever declared.  ``g . f`` is ``g`` after ``f``.
Comments run from ``#`` or ``//`` to the end of the line.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from ..errors import DslError, MissingComposite
from ..functor import FinFunctor, _infer_path, _nest, validate_functor
from ..groupoid import FinGroupoid
from ..precat import FinPrecategory, build_precategory, validate_precategory, with_core_paths, with_paths
from ..yoneda import FinPresheaf, validate_presheaf
from .render import describe


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    line: int
    column: int
    message: str
    law: str | None = None

    def __str__(self):
        law = f" [{self.law}]" if self.law else ""
        return f"{self.line}:{self.column}: {self.severity}: {self.message}{law}"


@dataclass
class SourceFile:
    path: str | None
    text: str
    items: dict = field(default_factory=dict)
    positions: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def kind(self, name) -> str:
        return _kind(self.items[name])

    def get(self, name, kind=None):
        if name not in self.items:
            raise KeyError(f"no item named {name!r}")
        item = self.items[name]
        if kind is not None and _kind(item) != kind:
            raise KeyError(f"{name!r} is a {_kind(item)}, not a {kind}")
        return item

    def named(self, kind):
        return {k: v for k, v in self.items.items() if _kind(v) == kind}

    def all_diagnostics(self) -> list:
        return [d for ds in self.diagnostics.values() for d in ds]


def _kind(item) -> str:
    if isinstance(item, FinPrecategory):
        return "precategory"
    if isinstance(item, FinFunctor):
        return "functor"
    if isinstance(item, FinPresheaf):
        return "presheaf"
    raise TypeError(f"not a source item: {type(item).__name__}")


# --------------------------------------------------------------------------- lexer


_TOKEN = re.compile(r"""
    (?P<nl>\n) | (?P<ws>[ \t\r]+) | (?P<comment>(?:\#|//)[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<arrow>->|=>)
  | (?P<word>[A-Za-z0-9_][A-Za-z0-9_']*)
  | (?P<punct>[{}:;,.=()])
""", re.X)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


def _error(line, col, message, law=None):
    return DslError([Diagnostic("error", line, col, message, law)])


def tokenize(text: str) -> list[Token]:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - start + 1
        if m is None:
            if text[pos] == '"':
                raise _error(line, col, "unterminated string")
            raise _error(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind == "string":
            raw = m.group()[1:-1]
            out.append(Token("name", re.sub(r"\\(.)", r"\1", raw), line, col))
        elif kind == "word":
            out.append(Token("word", m.group(), line, col))
        elif kind in ("arrow", "punct"):
            out.append(Token(m.group(), m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


# --------------------------------------------------------------------------- syntax tree


@dataclass(frozen=True)
class Ref:
    """A name occurrence; ``form`` is "name", "id" or "refl" (then ``text`` is the object)."""
    form: str
    text: str
    line: int
    column: int

    def __str__(self):
        return self.text if self.form == "name" else f"{self.form}({self.text})"


@dataclass
class PathsBlock:
    decls: list = field(default_factory=list)     # (name, src, tgt, mor)
    composes: list = field(default_factory=list)  # (q, p, r)


@dataclass
class PrecatDecl:
    name: Ref
    objects: list = field(default_factory=list)
    homs: list = field(default_factory=list)      # (a, b, [refs])
    composes: list = field(default_factory=list)  # (g, f, h)
    paths: object = None                           # None, Ref("name", "discrete" | "core"), PathsBlock


@dataclass
class FunctorDecl:
    name: Ref
    dom: Ref
    cod: Ref
    objs: list = field(default_factory=list)
    mors: list = field(default_factory=list)
    paths: list = field(default_factory=list)


@dataclass
class PresheafDecl:
    name: Ref
    base: Ref
    carriers: list = field(default_factory=list)  # (obj, [elements])
    acts: list = field(default_factory=list)      # (mor, [(x, y)])


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, expected):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.value)
        raise _error(t.line, t.column, f"expected {expected}, found {found}")

    def at(self, kind, value=None):
        t = self.tok
        return t.kind == kind and (value is None or t.value == value)

    def at_word(self, *words):
        return self.tok.kind == "word" and self.tok.value in words

    def eat(self, kind, value=None, expected=None):
        if not self.at(kind, value):
            self.fail(expected or repr(value or kind))
        t = self.tok
        self.i += 1
        return t

    def keyword(self, word):
        if not self.at_word(word):
            self.fail(f"'{word}'")
        self.i += 1

    def ref(self, what="a name") -> Ref:
        t = self.tok
        if t.kind == "word" and t.value in ("id", "refl") and self.toks[self.i + 1].kind == "(":
            self.i += 2
            inner = self.plain_name("an object name")
            self.eat(")", expected="')'")
            return Ref(t.value, inner.text, t.line, t.column)
        return self.plain_name(what)

    def plain_name(self, what="a name") -> Ref:
        t = self.tok
        if t.kind not in ("word", "name"):
            self.fail(what)
        self.i += 1
        return Ref("name", t.value, t.line, t.column)

    def ref_list(self, what):
        """Comma-separated refs up to ``;`` (possibly empty)."""
        out = []
        if self.at(";"):
            return out
        out.append(self.ref(what))
        while self.at(","):
            self.i += 1
            out.append(self.ref(what))
        return out

    def parse_file(self):
        items = []
        while not self.at("eof"):
            if self.at_word("precategory"):
                items.append(self.precategory())
            elif self.at_word("functor"):
                items.append(self.functor())
            elif self.at_word("presheaf"):
                items.append(self.presheaf())
            else:
                self.fail("'precategory', 'functor' or 'presheaf'")
        return items

    def precategory(self):
        self.keyword("precategory")
        d = PrecatDecl(self.plain_name("a precategory name"))
        self.eat("{", expected="'{'")
        self.keyword("objects")
        self.eat(":", expected="':'")
        d.objects = self.ref_list("an object name")
        self.eat(";", expected="';'")
        while self.at_word("hom"):
            self.i += 1
            a, b = self.plain_name("an object name"), self.plain_name("an object name")
            self.eat(":", expected="':'")
            d.homs.append((a, b, self.ref_list("a morphism name")))
            self.eat(";", expected="';'")
        d.composes = self.compose_lines("a morphism name")
        if self.at_word("paths"):
            self.i += 1
            if self.at_word("discrete", "core"):
                t = self.eat("word")
                d.paths = Ref("name", t.value, t.line, t.column)
            elif self.at("{"):
                d.paths = self.paths_block()
            else:
                self.fail("'discrete', 'core' or '{'")
            self.eat(";", expected="';'")
        self.eat("}", expected="'}'")
        return d

    def compose_lines(self, what):
        out = []
        while self.at_word("compose"):
            self.i += 1
            g = self.ref(what)
            self.eat(".", expected="'.'")
            f = self.ref(what)
            self.eat("=", expected="'='")
            h = self.ref(what)
            self.eat(";", expected="';'")
            out.append((g, f, h))
        return out

    def paths_block(self):
        blk = PathsBlock()
        self.eat("{")
        while self.at_word("path"):
            self.i += 1
            name = self.ref("a path name")
            self.eat(":", expected="':'")
            a = self.plain_name("an object name")
            self.eat("->", expected="'->'")
            b = self.plain_name("an object name")
            self.eat("=>", expected="'=>'")
            blk.decls.append((name, a, b, self.ref("a morphism name")))
            self.eat(";", expected="';'")
        blk.composes = self.compose_lines("a path name")
        self.eat("}", expected="'}'")
        return blk

    def functor(self):
        self.keyword("functor")
        name = self.plain_name("a functor name")
        self.eat(":", expected="':'")
        dom = self.plain_name("a precategory name")
        self.eat("->", expected="'->'")
        cod = self.plain_name("a precategory name")
        d = FunctorDecl(name, dom, cod)
        self.eat("{", expected="'{'")
        for word, bucket in (("obj", d.objs), ("mor", d.mors), ("path", d.paths)):
            while self.at_word(word):
                self.i += 1
                x = self.ref()
                self.eat("=>", expected="'=>'")
                bucket.append((x, self.ref()))
                self.eat(";", expected="';'")
        self.eat("}", expected="'}'")
        return d

    def presheaf(self):
        self.keyword("presheaf")
        name = self.plain_name("a presheaf name")
        self.keyword("on")
        d = PresheafDecl(name, self.plain_name("a precategory name"))
        self.eat("{", expected="'{'")
        while self.at_word("carrier"):
            self.i += 1
            a = self.plain_name("an object name")
            self.eat(":", expected="':'")
            d.carriers.append((a, self.ref_list("an element name")))
            self.eat(";", expected="';'")
        while self.at_word("act"):
            self.i += 1
            f = self.ref("a morphism name")
            self.eat(":", expected="':'")
            pairs = []
            if not self.at(";"):
                while True:
                    x = self.plain_name("an element name")
                    self.eat("=>", expected="'=>'")
                    pairs.append((x, self.plain_name("an element name")))
                    if not self.at(","):
                        break
                    self.i += 1
            d.acts.append((f, pairs))
            self.eat(";", expected="';'")
        self.eat("}", expected="'}'")
        return d


# --------------------------------------------------------------------------- compilation


class _Errors:
    def __init__(self):
        self.diags = []

    def add(self, ref, message):
        self.diags.append(Diagnostic("error", ref.line, ref.column, message))

    def raise_if_any(self):
        if self.diags:
            raise DslError(self.diags)


class Namespace:
    """Name lookup for a compiled precategory, using its labels."""

    def __init__(self, C: FinPrecategory):
        self.C = C
        self.objects = {}
        for a in range(C.n):
            self.objects.setdefault(C.obj_label(a), a)
        self.morphisms, self.paths = {}, {}
        for f in C.morphisms():
            if not C.is_identity(f):
                self.morphisms.setdefault(C.mor_label(f), []).append(f)
        G = C.paths
        for p in G.all_paths():
            if not (p.src == p.tgt and p.index == G.refl[p.src]):
                self.paths.setdefault(G.path_label(p), []).append(p)

    def obj(self, ref: Ref, err: _Errors):
        if ref.form != "name" or ref.text not in self.objects:
            err.add(ref, f"unknown object {ref}")
            return None
        return self.objects[ref.text]

    def mor(self, ref: Ref, err: _Errors):
        if ref.form == "id":
            a = self.obj(Ref("name", ref.text, ref.line, ref.column), err)
            return None if a is None else self.C.id(a)
        if ref.form == "refl":
            err.add(ref, f"{ref} is a path, not a morphism")
            return None
        hits = self.morphisms.get(ref.text, [])
        if len(hits) != 1:
            err.add(ref, f"{'ambiguous' if hits else 'unknown'} morphism {ref}")
            return None
        return hits[0]

    def path(self, ref: Ref, err: _Errors):
        if ref.form == "refl":
            a = self.obj(Ref("name", ref.text, ref.line, ref.column), err)
            return None if a is None else self.C.paths.refl_path(a)
        if ref.form == "id":
            err.add(ref, f"{ref} is a morphism, not a path")
            return None
        hits = self.paths.get(ref.text, [])
        if len(hits) != 1:
            err.add(ref, f"{'ambiguous' if hits else 'unknown'} path {ref}")
            return None
        return hits[0]


def _declare_objects(refs, err):
    objs = {}
    for r in refs:
        if r.form != "name":
            err.add(r, f"{r} cannot name an object")
        elif r.text in objs:
            err.add(r, f"duplicate object {r.text}")
        else:
            objs[r.text] = len(objs)
    return objs


def _members(n, decls, special, objs, err, what):
    """Lay out the elements of each ``(a, b)`` set.

    ``decls`` are ``(a_ref, b_ref, [refs])``; ``special`` is the form
    ("id" or "refl") of the distinguished element of each endo-set, which
    sits at index 0 unless listed elsewhere.  Returns the per-pair member
    lists (None marks the distinguished element) and a name table
    ``name -> (a, b, index)``.
    """
    members = [[None] * n for _ in range(n)]
    names = {}
    for ra, rb, refs in decls:
        a, b = objs.get(ra.text), objs.get(rb.text)
        for r, v in ((ra, a), (rb, b)):
            if v is None:
                err.add(r, f"unknown object {r.text}")
        if a is None or b is None:
            continue
        if members[a][b] is not None:
            err.add(ra, f"{what}s {ra.text} -> {rb.text} declared twice")
            continue
        lst = []
        for r in refs:
            if r.form == special:
                if a != b or objs.get(r.text) != a:
                    err.add(r, f"{r} does not belong to {ra.text} -> {rb.text}")
                elif None in lst:
                    err.add(r, f"{r} listed twice")
                else:
                    lst.append(None)
            elif r.form != "name":
                err.add(r, f"{r} cannot name a {what}")
            elif r.text in names:
                err.add(r, f"duplicate {what} {r.text}")
            else:
                names[r.text] = (a, b, len(lst))
                lst.append(r.text)
        members[a][b] = lst
    for a in range(n):
        for b in range(n):
            lst = members[a][b] or []
            if a == b and None not in lst:
                lst.insert(0, None)
                for k, (x, y, i) in list(names.items()):
                    if (x, y) == (a, b):
                        names[k] = (x, y, i + 1)
            members[a][b] = lst
    return members, names


def _composition(n, members, names, distinguished, composes, err, what, label):
    """Fill ``comp[a][b][c][g][f]`` from ``compose`` lines; distinguished-element composites are derived."""
    table = {}

    def resolve(r):
        if r.form == "name":
            if r.text not in names:
                err.add(r, f"unknown {what} {r.text}")
                return None
            return names[r.text]
        obj = {k: i for i, k in enumerate(label)}.get(r.text)
        if obj is None:
            err.add(r, f"unknown object {r.text}")
            return None
        return obj, obj, distinguished[obj]

    for g, f, h in composes:
        gv, fv, hv = resolve(g), resolve(f), resolve(h)
        if None in (gv, fv, hv):
            continue
        if g.form != "name" or f.form != "name":
            err.add(g if g.form != "name" else f, f"composites with {g.form if g.form != 'name' else f.form}(...) "
                                                  "are derived and cannot be given")
            continue
        if fv[1] != gv[0]:
            err.add(g, f"{g} . {f} is not composable: {f} ends at {label[fv[1]]}, {g} starts at {label[gv[0]]}")
            continue
        if (hv[0], hv[1]) != (fv[0], gv[1]):
            err.add(h, f"{h} is not a {what} {label[fv[0]]} -> {label[gv[1]]}")
            continue
        key = (fv[0], fv[1], gv[1], gv[2], fv[2])
        if key in table:
            err.add(g, f"composite {g} . {f} given twice")
            continue
        table[key] = hv[2]
    missing = []

    def compose(a, b, c, g, f):
        if a == b and f == distinguished[a]:
            return g
        if b == c and g == distinguished[b]:
            return f
        key = (a, b, c, g, f)
        if key not in table:
            missing.append((members[b][c][g], members[a][b][f]))
            return 0
        return table[key]

    return compose, missing


def _compile_precat(d: PrecatDecl, err: _Errors) -> FinPrecategory | None:
    objs = _declare_objects(d.objects, err)
    n = len(objs)
    label = tuple(objs)
    members, names = _members(n, d.homs, "id", objs, err, "morphism")
    if err.diags:
        return None
    hs = [[len(members[a][b]) for b in range(n)] for a in range(n)]
    identity = [members[a][a].index(None) for a in range(n)]
    compose, missing = _composition(n, members, names, identity, d.composes, err, "morphism", label)
    if err.diags:
        return None
    mor_labels = _nest(n, lambda a, b: members[a][b])
    C = build_precategory(hs, identity, compose, obj_labels=label, mor_labels=mor_labels)
    if missing:
        _raise_missing(d.name, missing, "compose")
    if d.paths is None or (isinstance(d.paths, Ref) and d.paths.text == "discrete"):
        return C
    if isinstance(d.paths, Ref):
        return with_core_paths(C)
    return _compile_paths(C, d.paths, objs, err)


def _raise_missing(where: Ref, missing, keyword):
    pairs = sorted(set(missing))
    text = ", ".join(f"{g} . {f}" for g, f in pairs)
    diag = Diagnostic("error", where.line, where.column,
                      f"{where.text}: missing {keyword} entries for {text}", "MissingComposite")
    raise MissingComposite([diag], pairs)


def _compile_paths(C: FinPrecategory, blk: PathsBlock, objs, err) -> FinPrecategory | None:
    n = C.n
    label = tuple(objs)
    ns = Namespace(C)
    # one declaration per line; group them by endpoints, keeping order
    grouped = {}
    for name, a, b, mor in blk.decls:
        _, _, refs, mors = grouped.setdefault((a.text, b.text), (a, b, [], []))
        refs.append(name)
        mors.append(mor)
    flat = list(grouped.values())
    members, names = _members(n, [(a, b, refs) for a, b, refs, _ in flat], "refl", objs, err, "path")
    if err.diags:
        return None
    sizes = tuple(tuple(len(members[a][b]) for b in range(n)) for a in range(n))
    refl = tuple(members[a][a].index(None) for a in range(n))
    transport = [[[None] * sizes[a][b] for b in range(n)] for a in range(n)]
    for a in range(n):
        transport[a][a][refl[a]] = C.identity[a]
    for a_ref, b_ref, refs, mors in flat:
        a, b = objs[a_ref.text], objs[b_ref.text]
        for r, m in zip(refs, mors):
            f = ns.mor(m, err)
            if f is None:
                continue
            if (f.src, f.tgt) != (a, b):
                err.add(m, f"{m} is not a morphism {a_ref.text} -> {b_ref.text}")
                continue
            idx = refl[a] if r.form == "refl" else names[r.text][2]
            transport[a][b][idx] = f.index
    compose, missing = _composition(n, members, names, refl, blk.composes, err, "path", label)
    if err.diags:
        return None

    def tab(a, b, c):
        if not (sizes[a][b] and sizes[b][c]):
            return ()
        return tuple(tuple(compose(a, b, c, q, p) for p in range(sizes[a][b])) for q in range(sizes[b][c]))

    comp = tuple(tuple(tuple(tab(a, b, c) for c in range(n)) for b in range(n)) for a in range(n))
    if missing:
        where = Ref("name", "paths", 0, 0)
        if blk.decls:
            where = Ref("name", "paths", blk.decls[0][0].line, blk.decls[0][0].column)
        _raise_missing(where, missing, "path compose")

    def inv(a, b, p):
        for q in range(sizes[b][a]):
            if comp[a][b][a][q][p] == refl[a]:
                return q
        return -1

    inv_t = _nest(n, lambda a, b: [inv(a, b, p) for p in range(sizes[a][b])])
    labels = _nest(n, lambda a, b: [f"refl({label[a]})" if m is None else m for m in members[a][b]])
    G = FinGroupoid(sizes, refl, comp, inv_t, labels)
    return with_paths(C, G, transport)


def _compile_functor(d: FunctorDecl, cats: dict, err: _Errors) -> FinFunctor | None:
    A, B = cats.get(d.dom.text), cats.get(d.cod.text)
    for r, v in ((d.dom, A), (d.cod, B)):
        if v is None:
            err.add(r, f"unknown precategory {r.text}")
    if A is None or B is None:
        return None
    na, nb = Namespace(A), Namespace(B)
    n = A.n
    obj_map = [None] * n
    for x, y in d.objs:
        a, b = na.obj(x, err), nb.obj(y, err)
        if a is None or b is None:
            continue
        if obj_map[a] is not None:
            err.add(x, f"object {x} mapped twice")
        obj_map[a] = b
    absent = [A.obj_label(a) for a in range(n) if obj_map[a] is None]
    if absent and not err.diags:
        err.add(d.name, f"functor {d.name.text} does not map objects {', '.join(absent)}")
    err.raise_if_any()
    hm = [[[None] * A.hom_sizes[a][b] for b in range(n)] for a in range(n)]
    for a in range(n):
        hm[a][a][A.identity[a]] = B.identity[obj_map[a]]
    for x, y in d.mors:
        f, g = na.mor(x, err), nb.mor(y, err)
        if f is None or g is None:
            continue
        if A.is_identity(f):
            err.add(x, "identities are mapped to identities implicitly")
            continue
        fa, fb = obj_map[f.src], obj_map[f.tgt]
        if (g.src, g.tgt) != (fa, fb):
            err.add(y, f"{y} is not a morphism {B.obj_label(fa)} -> {B.obj_label(fb)}")
            continue
        if hm[f.src][f.tgt][f.index] is not None:
            err.add(x, f"morphism {x} mapped twice")
        hm[f.src][f.tgt][f.index] = g.index
    absent = [A.mor_label(f) for f in A.morphisms() if hm[f.src][f.tgt][f.index] is None]
    if absent and not err.diags:
        err.add(d.name, f"functor {d.name.text} does not map morphisms {', '.join(absent)}")
    err.raise_if_any()
    hm = _nest(n, lambda a, b: hm[a][b])
    pm = [[[None] * A.paths.sizes[a][b] for b in range(n)] for a in range(n)]
    for x, y in d.paths:
        p, q = na.path(x, err), nb.path(y, err)
        if p is None or q is None:
            continue
        fa, fb = obj_map[p.src], obj_map[p.tgt]
        if (q.src, q.tgt) != (fa, fb):
            err.add(y, f"{y} is not a path {B.obj_label(fa)} = {B.obj_label(fb)}")
            continue
        pm[p.src][p.tgt][p.index] = q.index
    for p in A.paths.all_paths():
        if pm[p.src][p.tgt][p.index] is None:
            q = _infer_path(A, B, obj_map, hm, p)
            if q < 0:
                err.add(d.name, f"functor {d.name.text}: the image of path {A.paths.path_label(p)} is not "
                                "determined by idtoiso; add a path entry")
            pm[p.src][p.tgt][p.index] = q
    err.raise_if_any()
    return FinFunctor(A, B, tuple(obj_map), hm, _nest(n, lambda a, b: pm[a][b]), d.name.text)


def _compile_presheaf(d: PresheafDecl, cats: dict, err: _Errors) -> FinPresheaf | None:
    A = cats.get(d.base.text)
    if A is None:
        err.add(d.base, f"unknown precategory {d.base.text}")
        return None
    ns = Namespace(A)
    n = A.n
    elems = [None] * n
    for r, refs in d.carriers:
        a = ns.obj(r, err)
        if a is None:
            continue
        if elems[a] is not None:
            err.add(r, f"carrier of {r} given twice")
        names = []
        for e in refs:
            if e.form != "name":
                err.add(e, f"{e} cannot name an element")
            elif e.text in names:
                err.add(e, f"duplicate element {e.text}")
            else:
                names.append(e.text)
        elems[a] = names
    elems = [e or [] for e in elems]
    err.raise_if_any()
    act = [[[None] * A.hom_sizes[a][b] for b in range(n)] for a in range(n)]
    for a in range(n):
        act[a][a][A.identity[a]] = tuple(range(len(elems[a])))
    for r, pairs in d.acts:
        f = ns.mor(r, err)
        if f is None:
            continue
        if A.is_identity(f):
            err.add(r, "identities act trivially and are not given")
            continue
        src, tgt = elems[f.tgt], elems[f.src]
        table = [None] * len(src)
        for x, y in pairs:
            if x.text not in src:
                err.add(x, f"{x.text} is not an element over {A.obj_label(f.tgt)}")
            elif y.text not in tgt:
                err.add(y, f"{y.text} is not an element over {A.obj_label(f.src)}")
            elif table[src.index(x.text)] is not None:
                err.add(x, f"{x.text} mapped twice")
            else:
                table[src.index(x.text)] = tgt.index(y.text)
        if None in table:
            gaps = [src[i] for i, v in enumerate(table) if v is None]
            err.add(r, f"action of {r} does not map {', '.join(gaps)}")
        if act[f.src][f.tgt][f.index] is not None:
            err.add(r, f"action of {r} given twice")
        act[f.src][f.tgt][f.index] = tuple(table)
    for f in A.morphisms():
        if act[f.src][f.tgt][f.index] is None:
            if elems[f.tgt]:
                err.add(d.name, f"presheaf {d.name.text} gives no action for {A.mor_label(f)}")
            act[f.src][f.tgt][f.index] = ()
    err.raise_if_any()
    return FinPresheaf(A, tuple(len(e) for e in elems), _nest(n, lambda a, b: act[a][b]), d.name.text,
                       tuple(tuple(e) for e in elems))


def _law_diagnostics(ref: Ref, item, report):
    return [Diagnostic("error", ref.line, ref.column, f"{ref.text}: {describe(item, v)}", v.law)
            for v in report.violations]


def parse_dsl(text: str, path: str | None = None) -> SourceFile:
    """Parse and compile a source file.

    Syntax and resolution problems raise :class:`DslError`; law
    violations do not stop compilation and are recorded as diagnostics
    on the returned file.
    """
    decls = _Parser(tokenize(text)).parse_file()
    sf = SourceFile(path, text)
    seen = {}
    for d in decls:
        if d.name.text in seen:
            raise _error(d.name.line, d.name.column, f"duplicate item name {d.name.text}")
        seen[d.name.text] = d
    cats = {}
    for d in decls:
        if isinstance(d, PrecatDecl):
            err = _Errors()
            C = _compile_precat(d, err)
            err.raise_if_any()
            cats[d.name.text] = C
    for d in decls:
        err = _Errors()
        if isinstance(d, PrecatDecl):
            item = cats[d.name.text]
            diags = _law_diagnostics(d.name, item, validate_precategory(item))
        elif isinstance(d, FunctorDecl):
            item = _compile_functor(d, cats, err)
            err.raise_if_any()
            diags = _law_diagnostics(d.name, item, validate_functor(item))
        else:
            item = _compile_presheaf(d, cats, err)
            err.raise_if_any()
            diags = _law_diagnostics(d.name, item, validate_presheaf(item))
        sf.items[d.name.text] = item
        sf.positions[d.name.text] = (d.name.line, d.name.column)
        sf.diagnostics[d.name.text] = diags
    return sf


# --------------------------------------------------------------------------- export


_WORD = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_']*\Z")


def quote(name: str) -> str:
    if _WORD.match(name):
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _unique(names, taken=None):
    """Make names distinct by suffixing ``'`` where needed."""
    taken = set() if taken is None else taken
    out = []
    for s in names:
        t = s
        while t in taken:
            t += "'"
        taken.add(t)
        out.append(t)
    return out


def _names(C: FinPrecategory):
    n = C.n
    objs = _unique([C.obj_label(a) for a in range(n)])
    taken = set()
    mors = [[[None] * C.hom_sizes[a][b] for b in range(n)] for a in range(n)]
    for f in C.morphisms():
        if not C.is_identity(f):
            mors[f.src][f.tgt][f.index] = _unique([C.mor_label(f)], taken)[0]
    G = C.paths
    taken = set()
    paths = [[[None] * G.sizes[a][b] for b in range(n)] for a in range(n)]
    for p in G.all_paths():
        if not (p.src == p.tgt and p.index == G.refl[p.src]):
            lab = G.path_label(p)
            if lab.startswith("refl("):
                lab = "p_" + lab
            paths[p.src][p.tgt][p.index] = _unique([lab], taken)[0]
    return objs, mors, paths


def _mor_ref(C, objs, mors, a, b, i):
    if a == b and i == C.identity[a]:
        return f"id({quote(objs[a])})"
    return quote(mors[a][b][i])


def _path_ref(G, objs, paths, a, b, p):
    if a == b and p == G.refl[a]:
        return f"refl({quote(objs[a])})"
    return quote(paths[a][b][p])


def export_precat_dsl(C: FinPrecategory, name: str) -> str:
    n = C.n
    objs, mors, paths = _names(C)
    q = [quote(o) for o in objs]
    lines = [f"precategory {quote(name)} {{", f"  objects: {', '.join(q)};"]
    for a, b in itertools.product(range(n), repeat=2):
        size = C.hom_sizes[a][b]
        if a == b and size == 1:
            continue
        if size == 0:
            continue
        refs = [_mor_ref(C, objs, mors, a, b, i) for i in range(size)]
        if a == b and C.identity[a] == 0:
            refs = refs[1:]
        lines.append(f"  hom {q[a]} {q[b]}: {', '.join(refs)};")
    for a, b, c in itertools.product(range(n), repeat=3):
        for g in range(C.hom_sizes[b][c]):
            for f in range(C.hom_sizes[a][b]):
                if (a == b and f == C.identity[a]) or (b == c and g == C.identity[b]):
                    continue
                h = C.comp[a][b][c][g][f]
                lines.append(f"  compose {_mor_ref(C, objs, mors, b, c, g)} . {_mor_ref(C, objs, mors, a, b, f)}"
                             f" = {_mor_ref(C, objs, mors, a, c, h)};")
    G = C.paths
    if G.is_discrete and all(C.transport[a][a][0] == C.identity[a] for a in range(n)):
        lines.append("  paths discrete;")
    else:
        lines.append("  paths {")
        for a, b in itertools.product(range(n), repeat=2):
            for p in range(G.sizes[a][b]):
                is_refl = a == b and p == G.refl[a]
                if is_refl and p == 0 and C.transport[a][a][p] == C.identity[a]:
                    continue
                lines.append(f"    path {_path_ref(G, objs, paths, a, b, p)} : {q[a]} -> {q[b]} => "
                             f"{_mor_ref(C, objs, mors, a, b, C.transport[a][b][p])};")
        for a, b, c in itertools.product(range(n), repeat=3):
            for s in range(G.sizes[b][c]):
                for p in range(G.sizes[a][b]):
                    if (a == b and p == G.refl[a]) or (b == c and s == G.refl[b]):
                        continue
                    r = G.comp[a][b][c][s][p]
                    lines.append(f"    compose {_path_ref(G, objs, paths, b, c, s)} . "
                                 f"{_path_ref(G, objs, paths, a, b, p)} = {_path_ref(G, objs, paths, a, c, r)};")
        lines.append("  };")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_functor_dsl(F: FinFunctor, name: str, dom: str, cod: str) -> str:
    A, B = F.dom, F.cod
    ao, am, ap = _names(A)
    bo, bm, bp = _names(B)
    lines = [f"functor {quote(name)} : {quote(dom)} -> {quote(cod)} {{"]
    for a in range(A.n):
        lines.append(f"  obj {quote(ao[a])} => {quote(bo[F.obj_map[a]])};")
    for f in A.morphisms():
        if A.is_identity(f):
            continue
        g = F(f)
        lines.append(f"  mor {quote(am[f.src][f.tgt][f.index])} => {_mor_ref(B, bo, bm, g.src, g.tgt, g.index)};")
    for p in A.paths.all_paths():
        q = F(p)
        lines.append(f"  path {_path_ref(A.paths, ao, ap, p.src, p.tgt, p.index)} => "
                     f"{_path_ref(B.paths, bo, bp, q.src, q.tgt, q.index)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_presheaf_dsl(P: FinPresheaf, name: str, base: str) -> str:
    A = P.base
    objs, mors, _ = _names(A)
    elems = [_unique([P.element_label(a, x) for x in range(P.carrier[a])]) for a in range(A.n)]
    lines = [f"presheaf {quote(name)} on {quote(base)} {{"]
    for a in range(A.n):
        lines.append(f"  carrier {quote(objs[a])}: {', '.join(quote(e) for e in elems[a])};")
    for f in A.morphisms():
        if A.is_identity(f):
            continue
        pairs = [f"{quote(elems[f.tgt][x])} => {quote(elems[f.src][y])}"
                 for x, y in enumerate(P.action[f.src][f.tgt][f.index])]
        lines.append(f"  act {quote(mors[f.src][f.tgt][f.index])}: {', '.join(pairs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dsl(sf: SourceFile) -> str:
    """Render every item of ``sf``; functors and presheaves refer to their categories by item name."""
    owner = {}
    for k, v in sf.items.items():
        if isinstance(v, FinPrecategory):
            owner.setdefault(id(v), k)
    chunks = []
    for k, v in sf.items.items():
        if isinstance(v, FinPrecategory):
            chunks.append(export_precat_dsl(v, k))
        elif isinstance(v, FinFunctor):
            chunks.append(export_functor_dsl(v, k, _owner(sf, owner, v.dom), _owner(sf, owner, v.cod)))
        else:
            chunks.append(export_presheaf_dsl(v, k, _owner(sf, owner, v.base)))
    return "\n".join(chunks)


def _owner(sf, owner, C):
    if id(C) in owner:
        return owner[id(C)]
    for k, v in sf.items.items():
        if isinstance(v, FinPrecategory) and v == C:
            return k
    raise KeyError("item refers to a precategory that is not part of the file")
