"""Parser and printer for the checker's block-structured input language.

One file holds any number of blocks (categories, functors, diagrams,
natural transformations, complexes, spaces, groups, point maps).  Parsing is
a single linear pass with located, deterministic errors; identities are
never written in files, and the reserved ``id_`` prefix is rejected for user
names.  Category positions accept derived expressions: ``op(C)``,
``prod(C,D)`` and the built-in skeletons ``finset0`` .. ``finset6``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import RESERVED_PREFIX, RawCategory

KEYWORDS = {
    "category",
    "functor",
    "diagram",
    "nat",
    "complex",
    "space",
    "group",
    "map",
}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int  # 1-based
    column: int  # 1-based
    length: int

    def __str__(self):
        return f"{self.file}:{self.line}:{self.column}"


class ParseError(Exception):
    """Located syntax or local-reference error.

    kinds: UnexpectedToken, DuplicateName, UnknownReference, BadArity,
    ReservedName.
    """

    def __init__(self, span: SourceSpan, kind: str, message: str, expected=()):
        super().__init__(f"{span}: {kind}: {message}")
        self.span = span
        self.kind = kind
        self.message = message
        self.expected = tuple(expected)


@dataclass(frozen=True)
class Token:
    kind: str  # "name" | "punct" | "eof"
    value: str
    line: int
    col: int


_PUNCT2 = ("->", "=>")
_PUNCT1 = "{}():;=,-|"


def tokenize(text: str, filename: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text[i : i + 2] in _PUNCT2:
            tokens.append(Token("punct", text[i : i + 2], line, col))
            i += 2
            col += 2
            continue
        if c in _PUNCT1:
            tokens.append(Token("punct", c, line, col))
            i += 1
            col += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(
            SourceSpan(filename, line, col, 1),
            "UnexpectedToken",
            f"stray character {c!r}",
        )
    tokens.append(Token("eof", "", line, col))
    return tokens


# typed block descriptions -------------------------------------------------


@dataclass
class FunctorDecl:
    name: str
    source: tuple  # category expression
    target: tuple
    contravariant: bool
    object_map: list  # (a, x) pairs
    morphism_map: list  # (f, u) pairs


@dataclass
class DiagramDecl:
    name: str
    category: str
    nodes: list  # (node, object)
    edges: list  # (src, dst, morphism)


@dataclass
class NatDecl:
    name: str
    source_functor: str
    target_functor: str
    components: list  # (object, morphism)


@dataclass
class ComplexDecl:
    name: str
    simplices: list  # tuples of vertex names


@dataclass
class SpaceDecl:
    name: str
    points: list
    opens: list  # lists of points


@dataclass
class GroupDecl:
    name: str
    elements: list
    rows: list  # rows of element names


@dataclass
class MapDecl:
    name: str
    source: str
    target: str
    mapping: list  # (point, point)


@dataclass
class Document:
    items: list = field(default_factory=list)

    def of_kind(self, cls):
        return [x for x in self.items if isinstance(x, cls)]


class _Parser:
    def __init__(self, text, filename):
        self.tokens = tokenize(text, filename)
        self.file = filename
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def span(self, t: Token) -> SourceSpan:
        return SourceSpan(self.file, t.line, t.col, max(len(t.value), 1))

    def fail(self, t: Token, kind, message, expected=()):
        raise ParseError(self.span(t), kind, message, expected)

    def expect_name(self, what="a name") -> Token:
        t = self.take()
        if t.kind != "name":
            self.fail(t, "UnexpectedToken", f"expected {what}", expected=("name",))
        return t

    def user_name(self, what="a name") -> Token:
        t = self.expect_name(what)
        if t.value.startswith(RESERVED_PREFIX):
            self.fail(t, "ReservedName", f"{t.value!r} uses the reserved identity prefix")
        return t

    def expect_punct(self, value) -> Token:
        t = self.take()
        if t.kind != "punct" or t.value != value:
            self.fail(t, "UnexpectedToken", f"expected {value!r}", expected=(value,))
        return t

    def at_punct(self, value) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.value == value

    def at_name(self, value=None) -> bool:
        t = self.peek()
        return t.kind == "name" and (value is None or t.value == value)

    # blocks ---------------------------------------------------------------

    def document(self) -> Document:
        doc = Document()
        seen = {}
        while not self.peek().kind == "eof":
            t = self.expect_name("a block keyword")
            if t.value not in KEYWORDS:
                self.fail(
                    t, "UnexpectedToken", f"unknown block kind {t.value!r}", expected=sorted(KEYWORDS)
                )
            item = getattr(self, "block_" + t.value)()
            key = (t.value, item.name)
            if key in seen:
                self.fail(t, "DuplicateName", f"{t.value} {item.name!r} declared twice")
            seen[key] = item
            doc.items.append(item)
        return doc

    def block_category(self) -> RawCategory:
        name = self.user_name("a category name").value
        self.expect_punct("{")
        objects = []
        arrows = []
        comps = []
        arrow_names = {}
        objset = set()
        while not self.at_punct("}"):
            t = self.expect_name("objects/arrow/compose")
            if t.value == "objects":
                while self.at_name():
                    o = self.user_name("an object").value
                    if o in objset:
                        self.fail(t, "DuplicateName", f"object {o!r} declared twice")
                    objset.add(o)
                    objects.append(o)
            elif t.value == "arrow":
                f = self.user_name("an arrow name")
                self.expect_punct(":")
                a = self.expect_name("an object").value
                self.expect_punct("->")
                b = self.expect_name("an object").value
                if f.value in arrow_names:
                    self.fail(f, "DuplicateName", f"arrow {f.value!r} declared twice")
                for o in (a, b):
                    if o not in objset:
                        self.fail(f, "UnknownReference", f"arrow endpoint {o!r} is not declared")
                arrow_names[f.value] = True
                arrows.append((f.value, a, b))
            elif t.value == "compose":
                g = self.expect_name("an arrow")
                f = self.expect_name("an arrow")
                self.expect_punct("=")
                h = self.expect_name("an arrow")
                for x in (g, f, h):
                    if x.value not in arrow_names:
                        self.fail(x, "UnknownReference", f"arrow {x.value!r} is not declared")
                comps.append((g.value, f.value, h.value))
            else:
                self.fail(t, "UnexpectedToken", f"unknown category entry {t.value!r}",
                          expected=("objects", "arrow", "compose"))
        self.expect_punct("}")
        return RawCategory(name, objects, arrows, comps)

    def cat_expr(self):
        t = self.expect_name("a category")
        if t.value == "op" and self.at_punct("("):
            self.expect_punct("(")
            inner = self.cat_expr()
            self.expect_punct(")")
            return ("op", inner)
        if t.value == "prod" and self.at_punct("("):
            self.expect_punct("(")
            first = self.cat_expr()
            self.expect_punct(",")
            second = self.cat_expr()
            self.expect_punct(")")
            return ("prod", first, second)
        return ("name", t.value)

    def block_functor(self) -> FunctorDecl:
        name = self.user_name("a functor name").value
        self.expect_punct(":")
        src = self.cat_expr()
        self.expect_punct("->")
        dst = self.cat_expr()
        contra = False
        if self.at_name("contravariant"):
            self.take()
            contra = True
        self.expect_punct("{")
        omap, mmap = [], []
        oseen, mseen = set(), set()
        while not self.at_punct("}"):
            t = self.expect_name("object/arrow")
            if t.value == "object":
                a = self.expect_name("an object")
                self.expect_punct("=>")
                x = self.expect_name("an object")
                if a.value in oseen:
                    self.fail(a, "DuplicateName", f"object {a.value!r} mapped twice")
                oseen.add(a.value)
                omap.append((a.value, x.value))
            elif t.value == "arrow":
                f = self.expect_name("an arrow")
                self.expect_punct("=>")
                u = self.expect_name("an arrow")
                if f.value in mseen:
                    self.fail(f, "DuplicateName", f"arrow {f.value!r} mapped twice")
                mseen.add(f.value)
                mmap.append((f.value, u.value))
            else:
                self.fail(t, "UnexpectedToken", f"unknown functor entry {t.value!r}",
                          expected=("object", "arrow"))
        self.expect_punct("}")
        return FunctorDecl(name, src, dst, contra, omap, mmap)

    def block_diagram(self) -> DiagramDecl:
        name = self.user_name("a diagram name").value
        kw = self.expect_name("'in'")
        if kw.value != "in":
            self.fail(kw, "UnexpectedToken", "expected 'in'", expected=("in",))
        cat = self.expect_name("a category name").value
        self.expect_punct("{")
        nodes, edges = [], []
        nodeset = set()
        while not self.at_punct("}"):
            t = self.expect_name("node/edge")
            if t.value == "node":
                nd = self.user_name("a node name")
                self.expect_punct("=")
                obj = self.expect_name("an object")
                if nd.value in nodeset:
                    self.fail(nd, "DuplicateName", f"node {nd.value!r} declared twice")
                nodeset.add(nd.value)
                nodes.append((nd.value, obj.value))
            elif t.value == "edge":
                a = self.expect_name("a node")
                self.expect_punct("->")
                b = self.expect_name("a node")
                kw = self.expect_name("'by'")
                if kw.value != "by":
                    self.fail(kw, "UnexpectedToken", "expected 'by'", expected=("by",))
                m = self.expect_name("a morphism")
                for nd in (a, b):
                    if nd.value not in nodeset:
                        self.fail(nd, "UnknownReference", f"node {nd.value!r} is not declared")
                edges.append((a.value, b.value, m.value))
            else:
                self.fail(t, "UnexpectedToken", f"unknown diagram entry {t.value!r}",
                          expected=("node", "edge"))
        self.expect_punct("}")
        return DiagramDecl(name, cat, nodes, edges)

    def block_nat(self) -> NatDecl:
        name = self.user_name("a transformation name").value
        self.expect_punct(":")
        f = self.expect_name("a functor").value
        self.expect_punct("=>")
        g = self.expect_name("a functor").value
        self.expect_punct("{")
        comps = []
        seen = set()
        while not self.at_punct("}"):
            t = self.expect_name("component")
            if t.value != "component":
                self.fail(t, "UnexpectedToken", "expected 'component'", expected=("component",))
            a = self.expect_name("an object")
            self.expect_punct("=")
            m = self.expect_name("a morphism")
            if a.value in seen:
                self.fail(a, "DuplicateName", f"component at {a.value!r} given twice")
            seen.add(a.value)
            comps.append((a.value, m.value))
        self.expect_punct("}")
        return NatDecl(name, f, g, comps)

    def block_complex(self) -> ComplexDecl:
        name = self.user_name("a complex name").value
        self.expect_punct("{")
        simplices = []
        while not self.at_punct("}"):
            t = self.expect_name("simplex")
            if t.value != "simplex":
                self.fail(t, "UnexpectedToken", "expected 'simplex'", expected=("simplex",))
            verts = []
            while self.at_name():
                verts.append(self.take().value)
            if not verts:
                self.fail(t, "BadArity", "a simplex needs at least one vertex")
            simplices.append(tuple(verts))
        self.expect_punct("}")
        return ComplexDecl(name, simplices)

    def block_space(self) -> SpaceDecl:
        name = self.user_name("a space name").value
        self.expect_punct("{")
        points, opens = [], []
        pseen = set()
        while not self.at_punct("}"):
            t = self.expect_name("points/open")
            if t.value == "points":
                while self.at_name():
                    p = self.take()
                    if p.value in pseen:
                        self.fail(p, "DuplicateName", f"point {p.value!r} declared twice")
                    pseen.add(p.value)
                    points.append(p.value)
            elif t.value == "open":
                if self.at_punct("-"):
                    self.take()
                    opens.append([])
                    continue
                members = []
                while self.at_name():
                    p = self.take()
                    if p.value not in pseen:
                        self.fail(p, "UnknownReference", f"point {p.value!r} is not declared")
                    members.append(p.value)
                if not members:
                    self.fail(t, "BadArity", "an open set needs points or '-'")
                opens.append(members)
            else:
                self.fail(t, "UnexpectedToken", f"unknown space entry {t.value!r}",
                          expected=("points", "open"))
        self.expect_punct("}")
        return SpaceDecl(name, points, opens)

    def block_group(self) -> GroupDecl:
        name = self.user_name("a group name").value
        self.expect_punct("{")
        elements, rows = [], []
        eseen = set()
        while not self.at_punct("}"):
            t = self.expect_name("elements/table")
            if t.value == "elements":
                while self.at_name():
                    e = self.take()
                    if e.value in eseen:
                        self.fail(e, "DuplicateName", f"element {e.value!r} declared twice")
                    eseen.add(e.value)
                    elements.append(e.value)
            elif t.value == "table":
                row = []
                while True:
                    if self.at_name():
                        x = self.take()
                        if x.value not in eseen:
                            self.fail(x, "UnknownReference", f"entry {x.value!r} is not an element")
                        row.append(x.value)
                    elif self.at_punct(";"):
                        self.take()
                        if len(row) != len(elements):
                            self.fail(t, "BadArity",
                                      f"row has {len(row)} entries, expected {len(elements)}")
                        rows.append(row)
                        row = []
                    else:
                        break
                if row:
                    if len(row) != len(elements):
                        self.fail(t, "BadArity",
                                  f"row has {len(row)} entries, expected {len(elements)}")
                    rows.append(row)
            else:
                self.fail(t, "UnexpectedToken", f"unknown group entry {t.value!r}",
                          expected=("elements", "table"))
        self.expect_punct("}")
        return GroupDecl(name, elements, rows)

    def block_map(self) -> MapDecl:
        name = self.user_name("a map name").value
        self.expect_punct(":")
        src = self.expect_name("a space").value
        self.expect_punct("->")
        dst = self.expect_name("a space").value
        self.expect_punct("{")
        pairs = []
        seen = set()
        while not self.at_punct("}"):
            p = self.expect_name("a point")
            self.expect_punct("=>")
            q = self.expect_name("a point")
            if p.value in seen:
                self.fail(p, "DuplicateName", f"point {p.value!r} mapped twice")
            seen.add(p.value)
            pairs.append((p.value, q.value))
        self.expect_punct("}")
        return MapDecl(name, src, dst, pairs)


def parse_document(text: str, filename: str = "<input>") -> Document:
    return _Parser(text, filename).document()


_BLOCK_OF = {
    "category": RawCategory,
    "functor": FunctorDecl,
    "diagram": DiagramDecl,
    "nat": NatDecl,
    "complex": ComplexDecl,
    "space": SpaceDecl,
    "group": GroupDecl,
    "map": MapDecl,
}


def parse(kind: str, text: str, filename: str = "<input>"):
    """Typed description of the first block of the given kind."""
    if kind not in _BLOCK_OF:
        raise ValueError(f"unknown file kind {kind!r}")
    doc = parse_document(text, filename)
    for item in doc.items:
        if isinstance(item, _BLOCK_OF[kind]):
            return item
    raise ParseError(
        SourceSpan(filename, 1, 1, 1), "UnexpectedToken", f"no {kind} block in the input"
    )


# printer -------------------------------------------------------------------


def _print_cat_expr(e):
    if e[0] == "name":
        return e[1]
    if e[0] == "op":
        return f"op({_print_cat_expr(e[1])})"
    return f"prod({_print_cat_expr(e[1])},{_print_cat_expr(e[2])})"


def print_item(item) -> str:
    if isinstance(item, RawCategory):
        lines = [f"category {item.name} {{"]
        if item.objects:
            lines.append("  objects " + " ".join(item.objects))
        for f, a, b in item.morphisms:
            lines.append(f"  arrow {f} : {a} -> {b}")
        for g, f, h in item.compositions:
            lines.append(f"  compose {g} {f} = {h}")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(item, FunctorDecl):
        head = (
            f"functor {item.name} : {_print_cat_expr(item.source)} -> "
            f"{_print_cat_expr(item.target)}"
        )
        if item.contravariant:
            head += " contravariant"
        lines = [head + " {"]
        for a, x in item.object_map:
            lines.append(f"  object {a} => {x}")
        for f, u in item.morphism_map:
            lines.append(f"  arrow {f} => {u}")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(item, DiagramDecl):
        lines = [f"diagram {item.name} in {item.category} {{"]
        for n, o in item.nodes:
            lines.append(f"  node {n} = {o}")
        for a, b, m in item.edges:
            lines.append(f"  edge {a} -> {b} by {m}")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(item, NatDecl):
        lines = [f"nat {item.name} : {item.source_functor} => {item.target_functor} {{"]
        for a, m in item.components:
            lines.append(f"  component {a} = {m}")
        lines.append("}")
        return "\n".join(lines)
    if isinstance(item, ComplexDecl):
        lines = [f"complex {item.name} {{"]
        for s in item.simplices:
            lines.append("  simplex " + " ".join(s))
        lines.append("}")
        return "\n".join(lines)
    if isinstance(item, SpaceDecl):
        lines = [f"space {item.name} {{"]
        if item.points:
            lines.append("  points " + " ".join(item.points))
        for u in item.opens:
            lines.append("  open " + (" ".join(u) if u else "-"))
        lines.append("}")
        return "\n".join(lines)
    if isinstance(item, GroupDecl):
        lines = [f"group {item.name} {{"]
        if item.elements:
            lines.append("  elements " + " ".join(item.elements))
        if item.rows:
            lines.append("  table " + " ; ".join(" ".join(r) for r in item.rows))
        lines.append("}")
        return "\n".join(lines)
    if isinstance(item, MapDecl):
        lines = [f"map {item.name} : {item.source} -> {item.target} {{"]
        for p, q in item.mapping:
            lines.append(f"  {p} => {q}")
        lines.append("}")
        return "\n".join(lines)
    raise TypeError(f"cannot print {item!r}")


def print_document(doc: Document) -> str:
    return "\n\n".join(print_item(x) for x in doc.items) + "\n"
