"""Finite categories: validation of the axioms, morphism and object
classification, and builders for the standard small examples.

A category is stored with an explicit, closed composition table.  Identity
morphisms are never part of the user input: they are synthesized with the
reserved names ``id_<Obj>`` and their compositions are forced by the identity
laws.  Morphism equality is by name, and names are globally unique, which
realizes hom-set disjointness syntactically.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field

from .errors import CheckError

RESERVED_PREFIX = "id_"
DEFAULT_FINSET_LIMIT = 6


def identity_name(obj: str) -> str:
    return RESERVED_PREFIX + obj


@dataclass(frozen=True)
class MorData:
    """A named arrow with endpoints."""

    name: str
    dom: str
    cod: str


@dataclass
class RawCategory:
    """Unvalidated category description: no identities, no identity
    compositions; ``compositions`` entries read `g after f equals h`."""

    name: str
    objects: list
    morphisms: list  # (name, dom, cod)
    compositions: list  # (g, f, h)


class FinCategory:
    """A validated finite category.

    Instances are built by :func:`validate_category` or by the builders in
    this package, never mutated afterwards, and safe to share.  ``comp`` maps
    every composable pair ``(g, f)`` (identities included) to the name of
    "g after f"; for generated categories such as the finite-set skeleton the
    mapping may be computed lazily instead of stored.
    """

    def __init__(self, name, objects, morphisms, identity, comp, meta=None):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.identity = dict(identity)
        self.comp = comp
        self.meta = meta or {}
        self._mor = {m.name: m for m in self.morphisms}
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        self._identities = frozenset(self.identity.values())
        self._hom = {}
        for m in self.morphisms:
            self._hom.setdefault((m.dom, m.cod), []).append(m.name)

    def has_object(self, obj) -> bool:
        return obj in self._obj_index

    def has_morphism(self, name) -> bool:
        return name in self._mor

    def mor(self, name) -> MorData:
        if name not in self._mor:
            raise CheckError("UnknownMorphism", f"no morphism named {name!r} in {self.name}")
        return self._mor[name]

    def dom(self, name) -> str:
        return self.mor(name).dom

    def cod(self, name) -> str:
        return self.mor(name).cod

    def is_identity(self, name) -> bool:
        return name in self._identities

    def hom(self, a, b):
        """Morphisms from a to b, in declaration order."""
        for obj in (a, b):
            if obj not in self._obj_index:
                raise CheckError("UnknownObject", f"no object named {obj!r} in {self.name}")
        return list(self._hom.get((a, b), ()))

    def compose(self, g, f):
        """Name of g after f; the pair must be composable."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise CheckError(
                "NotComposable",
                f"{g} after {f} undefined in {self.name}",
                witness=(g, f),
            ) from None

    def composable_pairs(self):
        """All (g, f) with dom(g) = cod(f), grouped by middle object."""
        for b in self.objects:
            fs = [m.name for m in self.morphisms if m.cod == b]
            gs = [m.name for m in self.morphisms if m.dom == b]
            for f in fs:
                for g in gs:
                    yield g, f

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        if (self.objects, self.morphisms, self.identity) != (
            other.objects,
            other.morphisms,
            other.identity,
        ):
            return False
        if isinstance(self.comp, dict) and isinstance(other.comp, dict):
            return self.comp == other.comp
        return self.meta.get("finset_max") == other.meta.get("finset_max")

    def __repr__(self):
        return (
            f"FinCategory({self.name!r}, {len(self.objects)} objects, "
            f"{len(self.morphisms)} morphisms)"
        )


def _check_object_tokens(objects):
    seen = set()
    for o in objects:
        if not o or any(c.isspace() for c in o):
            raise CheckError("DuplicateId", f"bad object token {o!r}")
        if o in seen:
            raise CheckError("DuplicateId", f"object {o!r} declared twice", witness=o)
        seen.add(o)


def validate_category(raw: RawCategory) -> FinCategory:
    """Check the category axioms on a raw description.

    Identities and their compositions are synthesized; every remaining
    composable pair must have an explicit table entry.  Raises
    :class:`CheckError` naming the first violated axiom with a witness.
    """
    _check_object_tokens(raw.objects)
    objset = set(raw.objects)

    morphisms = [MorData(identity_name(o), o, o) for o in raw.objects]
    identity = {o: identity_name(o) for o in raw.objects}
    id_names = set(identity.values())
    seen = set(id_names)
    for name, dom, cod in raw.morphisms:
        if name in id_names:
            raise CheckError("ReservedName", f"{name!r} is the reserved identity of {name[3:]!r}")
        if name in seen:
            raise CheckError("DuplicateId", f"morphism {name!r} declared twice", witness=name)
        seen.add(name)
        if dom not in objset or cod not in objset:
            raise CheckError(
                "DanglingEndpoint",
                f"morphism {name}: {dom} -> {cod} references an undeclared object",
                witness=name,
            )
        morphisms.append(MorData(name, dom, cod))

    by_name = {m.name: m for m in morphisms}
    comp = {}
    for g, f, h in raw.compositions:
        for x in (g, f):
            # compositions with an identity argument are synthesized, never given
            if x in id_names:
                raise CheckError(
                    "ReservedName",
                    f"identity {x!r} may not appear as a composition argument",
                )
        for x in (g, f, h):
            if x not in by_name:
                raise CheckError("UnknownMorphism", f"composition entry references {x!r}")
        if by_name[f].cod != by_name[g].dom:
            raise CheckError("NotComposable", f"{g} after {f} is not composable", witness=(g, f))
        if (g, f) in comp:
            raise CheckError("DuplicateComposite", f"{g} after {f} given twice", witness=(g, f))
        want_dom, want_cod = by_name[f].dom, by_name[g].cod
        if (by_name[h].dom, by_name[h].cod) != (want_dom, want_cod):
            raise CheckError(
                "BadComposite",
                f"{g} after {f} = {h} has endpoints {by_name[h].dom} -> {by_name[h].cod}, "
                f"expected {want_dom} -> {want_cod}",
                witness=(g, f, h),
            )
        comp[(g, f)] = h

    # identity compositions are forced by the identity laws
    for m in morphisms:
        comp[(m.name, identity[m.dom])] = m.name
        comp[(identity[m.cod], m.name)] = m.name

    cat = FinCategory(raw.name, raw.objects, morphisms, identity, comp)
    for g, f in cat.composable_pairs():
        if (g, f) not in comp:
            raise CheckError("MissingComposite", f"no entry for {g} after {f}", witness=(g, f))
    _check_associativity(cat)
    return cat


def _check_associativity(cat: FinCategory):
    nonid = [m for m in cat.morphisms if not cat.is_identity(m.name)]
    by_dom = {}
    for m in nonid:
        by_dom.setdefault(m.dom, []).append(m)
    for f in nonid:
        for g in by_dom.get(f.cod, ()):
            gf = cat.comp[(g.name, f.name)]
            for h in by_dom.get(g.cod, ()):
                if cat.comp[(h.name, gf)] != cat.comp[(cat.comp[(h.name, g.name)], f.name)]:
                    raise CheckError(
                        "NotAssociative",
                        f"h(gf) != (hg)f for f={f.name}, g={g.name}, h={h.name}",
                        witness=(f.name, g.name, h.name),
                    )


def recheck_category(cat: FinCategory):
    """Re-run every axiom on an already assembled instance.

    Used to machine-check builder outputs and to probe mutated tables; unlike
    :func:`validate_category` nothing is synthesized, so identity laws are
    genuinely tested here.
    """
    _check_object_tokens(cat.objects)
    names = set()
    for m in cat.morphisms:
        if m.name in names:
            raise CheckError("DuplicateId", f"morphism {m.name!r} declared twice", witness=m.name)
        names.add(m.name)
        if not cat.has_object(m.dom) or not cat.has_object(m.cod):
            raise CheckError("DanglingEndpoint", f"{m.name} has undeclared endpoints", witness=m.name)
    for o in cat.objects:
        i = cat.identity.get(o)
        if i is None or not cat.has_morphism(i) or (cat.dom(i), cat.cod(i)) != (o, o):
            raise CheckError("BadIdentity", f"object {o} lacks a well-formed identity", witness=o)
    for g, f in cat.composable_pairs():
        if (g, f) not in cat.comp:
            raise CheckError("MissingComposite", f"no entry for {g} after {f}", witness=(g, f))
        h = cat.comp[(g, f)]
        if not cat.has_morphism(h) or (cat.dom(h), cat.cod(h)) != (cat.dom(f), cat.cod(g)):
            raise CheckError("BadComposite", f"{g} after {f} = {h} is ill-typed", witness=(g, f, h))
    for m in cat.morphisms:
        if cat.comp[(m.name, cat.identity[m.dom])] != m.name or cat.comp[
            (cat.identity[m.cod], m.name)
        ] != m.name:
            raise CheckError("BadIdentity", f"identity laws fail at {m.name}", witness=m.name)
    for f in cat.morphisms:
        for g in (m for m in cat.morphisms if m.dom == f.cod):
            gf = cat.comp[(g.name, f.name)]
            for h in (m for m in cat.morphisms if m.dom == g.cod):
                if cat.comp[(h.name, gf)] != cat.comp[(cat.comp[(h.name, g.name)], f.name)]:
                    raise CheckError(
                        "NotAssociative",
                        f"h(gf) != (hg)f for f={f.name}, g={g.name}, h={h.name}",
                        witness=(f.name, g.name, h.name),
                    )


def hom_set(cat: FinCategory, a, b):
    """Mor(a, b) as a list of morphism names in declaration order."""
    return cat.hom(a, b)


@dataclass(frozen=True)
class MorphismFlags:
    mono: bool
    epi: bool
    iso: bool
    inverse: str | None
    regular: bool
    regular_witness: str | None


def classify_morphism(cat: FinCategory, f: str) -> MorphismFlags:
    """Exhaustive cancellability/invertibility analysis of one morphism."""
    m = cat.mor(f)
    mono = True
    for x in cat.objects:
        side = cat.hom(x, m.dom)
        for u, v in itertools.combinations(side, 2):
            if cat.compose(f, u) == cat.compose(f, v):
                mono = False
                break
        if not mono:
            break
    epi = True
    for x in cat.objects:
        side = cat.hom(m.cod, x)
        for u, v in itertools.combinations(side, 2):
            if cat.compose(u, f) == cat.compose(v, f):
                epi = False
                break
        if not epi:
            break
    inverse = None
    for g in cat.hom(m.cod, m.dom):
        if (
            cat.compose(g, f) == cat.identity[m.dom]
            and cat.compose(f, g) == cat.identity[m.cod]
        ):
            inverse = g
            break
    regular_witness = None
    for g in cat.hom(m.cod, m.dom):
        if cat.compose(f, cat.compose(g, f)) == f:
            regular_witness = g
            break
    return MorphismFlags(
        mono=mono,
        epi=epi,
        iso=inverse is not None,
        inverse=inverse,
        regular=regular_witness is not None,
        regular_witness=regular_witness,
    )


def find_special_object(cat: FinCategory, kind: str):
    """First object (declaration order) that is initial/terminal/null, else None."""
    if kind not in ("initial", "terminal", "null"):
        raise ValueError(f"unknown kind {kind!r}")
    for cand in cat.objects:
        initial = all(len(cat.hom(cand, a)) == 1 for a in cat.objects)
        terminal = all(len(cat.hom(a, cand)) == 1 for a in cat.objects)
        if kind == "initial" and initial:
            return cand
        if kind == "terminal" and terminal:
            return cand
        if kind == "null" and initial and terminal:
            return cand
    return None


def zero_morphism(cat: FinCategory, a, b) -> str:
    """The composite a -> Z -> b through the null object Z."""
    z = find_special_object(cat, "null")
    if z is None:
        raise CheckError("NoNullObject", f"{cat.name} has no null object")
    (to_z,) = cat.hom(a, z)
    (from_z,) = cat.hom(z, b)
    return cat.compose(from_z, to_z)


@dataclass(frozen=True)
class CategoryFlags:
    groupoid: bool
    discrete: bool
    one_object_monoid: bool
    one_object_group: bool


def classify_category(cat: FinCategory) -> CategoryFlags:
    discrete = all(cat.is_identity(m.name) for m in cat.morphisms)
    groupoid = all(classify_morphism(cat, m.name).iso for m in cat.morphisms)
    one_object = len(cat.objects) == 1
    return CategoryFlags(
        groupoid=groupoid,
        discrete=discrete,
        one_object_monoid=one_object,
        one_object_group=one_object and groupoid,
    )


def subcategory(cat: FinCategory, objects, morphisms=None) -> FinCategory:
    """The subcategory on the given objects and (non-identity) morphisms.

    ``morphisms=None`` selects every morphism of ``cat`` between the chosen
    objects, i.e. the full subcategory.  The selection must be closed under
    composition or a ``NotASubcategory`` error is raised.
    """
    for o in objects:
        if not cat.has_object(o):
            raise CheckError("UnknownObject", f"no object named {o!r} in {cat.name}")
    objset = set(objects)
    if morphisms is None:
        chosen = [
            m.name
            for m in cat.morphisms
            if m.dom in objset and m.cod in objset and not cat.is_identity(m.name)
        ]
    else:
        chosen = []
        for name in morphisms:
            m = cat.mor(name)
            if cat.is_identity(name):
                continue
            if m.dom not in objset or m.cod not in objset:
                raise CheckError(
                    "NotASubcategory",
                    f"{name} has endpoints outside the selected objects",
                    witness=name,
                )
            chosen.append(name)
    keep = set(chosen)
    comps = []
    for g in chosen:
        for f in chosen:
            if cat.cod(f) != cat.dom(g):
                continue
            h = cat.compose(g, f)
            if not cat.is_identity(h) and h not in keep:
                raise CheckError(
                    "NotASubcategory",
                    f"selection not closed: {g} after {f} = {h} is missing",
                    witness=(g, f, h),
                )
            if not cat.is_identity(h):
                comps.append((g, f, h))
    raw = RawCategory(
        name=f"{cat.name}|sub",
        objects=list(objects),
        morphisms=[(n, cat.dom(n), cat.cod(n)) for n in chosen],
        compositions=comps,
    )
    return validate_category(raw)


def is_full_subcategory(cat: FinCategory, sub: FinCategory) -> bool:
    """True iff ``sub`` contains the entire hom-set of ``cat`` for each pair
    of its objects."""
    for o in sub.objects:
        if not cat.has_object(o):
            raise CheckError("NotASubcategory", f"object {o!r} is not in {cat.name}", witness=o)
    for m in sub.morphisms:
        if sub.is_identity(m.name):
            continue
        if not cat.has_morphism(m.name) or (cat.dom(m.name), cat.cod(m.name)) != (m.dom, m.cod):
            raise CheckError(
                "NotASubcategory", f"morphism {m.name!r} is not in {cat.name}", witness=m.name
            )
    for g, f in sub.composable_pairs():
        if sub.compose(g, f) != cat.compose(g, f):
            raise CheckError(
                "NotASubcategory",
                f"composition of {g} after {f} disagrees with {cat.name}",
                witness=(g, f),
            )
    for a in sub.objects:
        for b in sub.objects:
            if set(sub.hom(a, b)) != set(cat.hom(a, b)):
                return False
    return True


def op_name(cat: FinCategory, m: str) -> str:
    return m if cat.is_identity(m) else "op_" + m


def opposite_category(cat: FinCategory) -> FinCategory:
    """Same objects, arrows reversed, composition order swapped."""
    _require_small_table(cat)
    mors = [
        (op_name(cat, m.name), m.cod, m.dom)
        for m in cat.morphisms
        if not cat.is_identity(m.name)
    ]
    comps = []
    for (g, f), h in cat.comp.items():
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        comps.append((op_name(cat, f), op_name(cat, g), op_name(cat, h)))
    raw = RawCategory(f"op({cat.name})", list(cat.objects), mors, comps)
    out = validate_category(raw)
    out.meta["opposite_of"] = cat
    return out


def un_op_name(opc: FinCategory, name: str) -> str:
    """Original name of a morphism of an opposite category."""
    return name if opc.is_identity(name) else name[3:]


def pair_obj(a: str, b: str) -> str:
    return f"{a}*{b}"


def pair_mor(c: FinCategory, d: FinCategory, f: str, g: str) -> str:
    """Name of the product-category morphism (f, g)."""
    if c.is_identity(f) and d.is_identity(g):
        return identity_name(pair_obj(c.dom(f), d.dom(g)))
    return f"{f}*{g}"


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    """Pairs of objects and arrows with componentwise composition."""
    _require_small_table(c)
    _require_small_table(d)
    objects = [pair_obj(a, b) for a in c.objects for b in d.objects]
    mors = []
    for mc in c.morphisms:
        for md in d.morphisms:
            if c.is_identity(mc.name) and d.is_identity(md.name):
                continue
            name = pair_mor(c, d, mc.name, md.name)
            mors.append((name, pair_obj(mc.dom, md.dom), pair_obj(mc.cod, md.cod)))
    comps = {}
    for (g1, f1), h1 in c.comp.items():
        for (g2, f2), h2 in d.comp.items():
            # identity compositions of the product are synthesized
            if c.is_identity(g1) and d.is_identity(g2):
                continue
            if c.is_identity(f1) and d.is_identity(f2):
                continue
            g = pair_mor(c, d, g1, g2)
            f = pair_mor(c, d, f1, f2)
            comps[(g, f)] = pair_mor(c, d, h1, h2)
    raw = RawCategory(
        f"{c.name}x{d.name}",
        objects,
        mors,
        [(g, f, h) for (g, f), h in comps.items()],
    )
    out = validate_category(raw)
    out.meta["product_of"] = (c, d)
    return out


def _require_small_table(cat: FinCategory, cap: int = 2_000_000):
    """Refuse to materialize a lazily composed category that is too large."""
    if not isinstance(cat.comp, dict) and len(cat.comp) > cap:
        raise CheckError(
            "SizeBound",
            f"{cat.name} has {len(cat.comp)} composition entries; too large to materialize",
        )


# ---------------------------------------------------------------------------
# Finite functions and the skeleton of finite sets


@dataclass(frozen=True)
class FinFunction:
    """A function {0..dom_size-1} -> {0..cod_size-1} as an entry tuple."""

    dom_size: int
    cod_size: int
    mapping: tuple

    def __post_init__(self):
        if len(self.mapping) != self.dom_size:
            raise ValueError("mapping length disagrees with dom_size")
        if any(not (0 <= v < self.cod_size) for v in self.mapping):
            raise ValueError("mapping entry out of range")

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def after(self, other: "FinFunction") -> "FinFunction":
        """self âˆ˜ other."""
        if other.cod_size != self.dom_size:
            raise ValueError("not composable")
        return FinFunction(
            other.dom_size, self.cod_size, tuple(self.mapping[v] for v in other.mapping)
        )

    def is_identity(self) -> bool:
        return self.dom_size == self.cod_size and self.mapping == tuple(range(self.dom_size))

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == self.dom_size

    def is_surjective(self) -> bool:
        return len(set(self.mapping)) == self.cod_size

    def rank(self) -> int:
        """Row-major index of the entry tuple among all cod^dom tuples."""
        r = 0
        for v in self.mapping:
            r = r * self.cod_size + v
        return r

    @staticmethod
    def identity(n: int) -> "FinFunction":
        return FinFunction(n, n, tuple(range(n)))


def finset_obj(k: int) -> str:
    return f"s{k}"


def finset_obj_size(name: str) -> int:
    return int(name[1:])


def finset_mor_name(fn: FinFunction) -> str:
    if fn.is_identity():
        return identity_name(finset_obj(fn.dom_size))
    return f"f{fn.dom_size}to{fn.cod_size}x{fn.rank()}"


class _FinsetComp(Mapping):
    """Composition table of a finite-set skeleton, evaluated on demand.

    The closed table for max size 6 would hold billions of entries, so
    lookups compose the underlying functions instead.
    """

    def __init__(self, fns):
        self._fns = fns
        by_dom = {}
        by_cod = {}
        for name, fn in fns.items():
            by_dom.setdefault(fn.dom_size, []).append(name)
            by_cod.setdefault(fn.cod_size, []).append(name)
        self._by_dom = by_dom
        self._by_cod = by_cod
        self._len = sum(
            len(self._by_cod.get(b, ())) * len(self._by_dom.get(b, ()))
            for b in set(self._by_dom) | set(self._by_cod)
        )

    def __getitem__(self, key):
        g, f = key
        gf, ff = self._fns.get(g), self._fns.get(f)
        if gf is None or ff is None or ff.cod_size != gf.dom_size:
            raise KeyError(key)
        return finset_mor_name(gf.after(ff))

    def __iter__(self):
        for b in sorted(set(self._by_dom) & set(self._by_cod)):
            for f in self._by_cod[b]:
                for g in self._by_dom[b]:
                    yield (g, f)

    def __len__(self):
        return self._len


def finset_skeleton(max_size: int, limit: int = DEFAULT_FINSET_LIMIT) -> FinCategory:
    """Objects s0..s_max, morphisms all functions, composition of functions.

    s0 is initial and s1 terminal.  The limit guards against the n^m blow-up
    of the morphism count.
    """
    if max_size < 0:
        raise ValueError("max_size must be >= 0")
    if max_size > limit:
        raise CheckError("SizeBound", f"max_size {max_size} exceeds the limit {limit}")
    objects = [finset_obj(k) for k in range(max_size + 1)]
    fns = {}
    morphisms = []
    identity = {}
    for m in range(max_size + 1):
        for n in range(max_size + 1):
            for mapping in itertools.product(range(n), repeat=m):
                fn = FinFunction(m, n, mapping)
                name = finset_mor_name(fn)
                fns[name] = fn
                morphisms.append(MorData(name, finset_obj(m), finset_obj(n)))
                if fn.is_identity():
                    identity[finset_obj(m)] = name
    morphisms.sort(key=lambda m: (not m.name.startswith(RESERVED_PREFIX),))
    return FinCategory(
        f"FinSet<={max_size}",
        objects,
        morphisms,
        identity,
        _FinsetComp(fns),
        meta={"finset_max": max_size, "fn": fns},
    )


def finset_fn(cat: FinCategory, name: str) -> FinFunction:
    """Decode a skeleton morphism back into its function."""
    try:
        return cat.meta["fn"][name]
    except KeyError:
        raise CheckError("UnknownMorphism", f"{name!r} is not a morphism of {cat.name}") from None


def is_finset_skeleton(cat: FinCategory) -> bool:
    return "finset_max" in cat.meta


# ---------------------------------------------------------------------------
# Poset categories and free categories on acyclic graphs


@dataclass
class PosetData:
    elements: list
    leq: set  # pairs (a, b) meaning a <= b


def check_poset(p: PosetData):
    elems = list(p.elements)
    eset = set(elems)
    if len(eset) != len(elems):
        raise CheckError("NotAPoset", "duplicate elements")
    for a, b in p.leq:
        if a not in eset or b not in eset:
            raise CheckError("NotAPoset", f"relation mentions undeclared element in {(a, b)}")
    rel = set(p.leq)
    for a in elems:
        if (a, a) not in rel:
            raise CheckError("NotAPoset", f"reflexivity fails at {a}", witness=a)
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise CheckError("NotAPoset", f"antisymmetry fails on {a}, {b}", witness=(a, b))
    for a, b in rel:
        for c in elems:
            if (b, c) in rel and (a, c) not in rel:
                raise CheckError(
                    "NotAPoset", f"transitivity fails on {a} <= {b} <= {c}", witness=(a, b, c)
                )


def _le_name(a, b):
    return f"le:{a}:{b}"


def poset_category(p: PosetData) -> FinCategory:
    """One morphism a -> b exactly when a <= b; composition is forced."""
    check_poset(p)
    rel = set(p.leq)
    mors = [(_le_name(a, b), a, b) for (a, b) in sorted(rel) if a != b]
    comps = []
    for a, b in sorted(rel):
        if a == b:
            continue
        for c in p.elements:
            if c != b and (b, c) in rel:
                comps.append((_le_name(b, c), _le_name(a, b), _le_name(a, c)))
    raw = RawCategory(f"poset({len(p.elements)})", list(p.elements), mors, comps)
    return validate_category(raw)


@dataclass
class MultiGraph:
    vertices: list
    edges: list  # (name, src, dst)


def _graph_has_cycle(g: MultiGraph) -> bool:
    succ = {}
    for _, s, d in g.edges:
        succ.setdefault(s, []).append(d)
    color = {v: 0 for v in g.vertices}

    def dfs(v):
        color[v] = 1
        for w in succ.get(v, ()):
            if color[w] == 1 or (color[w] == 0 and dfs(w)):
                return True
        color[v] = 2
        return False

    return any(color[v] == 0 and dfs(v) for v in g.vertices)


def free_category(g: MultiGraph) -> FinCategory:
    """All directed paths of an acyclic multigraph, composed by concatenation.

    Paths of length one keep their edge name; longer paths join edge names
    with ';', empty paths are the identities.
    """
    names = set()
    for name, s, d in g.edges:
        if ";" in name:
            raise CheckError("ReservedName", f"edge name {name!r} contains the path separator")
        if name in names:
            raise CheckError("DuplicateId", f"edge {name!r} declared twice", witness=name)
        names.add(name)
        if s not in g.vertices or d not in g.vertices:
            raise CheckError("DanglingEndpoint", f"edge {name} references unknown vertex")
    if _graph_has_cycle(g):
        raise CheckError("CyclicGraph", "free category on a cyclic graph would be infinite")

    out_edges = {}
    for name, s, d in g.edges:
        out_edges.setdefault(s, []).append((name, d))
    paths = []  # (tuple of edge names, src, dst)

    def extend(prefix, src, at):
        for name, nxt in out_edges.get(at, ()):
            p = prefix + (name,)
            paths.append((p, src, nxt))
            extend(p, src, nxt)

    for v in g.vertices:
        extend((), v, v)

    def path_name(p):
        return ";".join(p)

    mors = [(path_name(p), s, d) for p, s, d in paths]
    comps = []
    by_src = {}
    for p, s, d in paths:
        by_src.setdefault(s, []).append((p, d))
    for p, s, d in paths:
        for q, d2 in by_src.get(d, ()):
            comps.append((path_name(q), path_name(p), path_name(p + q)))
    raw = RawCategory("free", list(g.vertices), mors, comps)
    return validate_category(raw)
