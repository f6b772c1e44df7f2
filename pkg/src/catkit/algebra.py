"""Finite groups from multiplication tables.

The group axioms are decided diagrammatically: the carrier, its square and
its cube are rendered as finite sets, the structure maps become explicit
functions between them, and the identity/associativity/inverse diagrams are
chased through the diagram module.  Actions, homomorphisms, kernels, images
and the bridge to one-object categories are elementwise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FinCategory, FinFunction, MorData, RawCategory, identity_name, validate_category
from .core import classify_category
from .diagram import build_diagram, is_commutative
from .errors import CheckError
from .partition import ComponentPartition, UnionFind, partition_from_unionfind


@dataclass(frozen=True)
class FinGroup:
    elements: tuple
    table: tuple  # row tuples of element indices
    identity: object
    inverse: dict  # element -> element

    def index(self, x):
        return self.elements.index(x)

    def mult(self, a, b):
        return self.elements[self.table[self.index(a)][self.index(b)]]

    def __len__(self):
        return len(self.elements)


def _carrier_category(n: int, mu, e_idx, nu):
    """Finite-set rendering of the carrier, its square and its cube, with
    just the structure maps and the path composites the axiom diagrams need.

    Objects g1, g2, g3 stand for G, GxG, GxGxG with row-major encoding; a
    composite that coincides with a listed function reuses its name, so a
    commuting pair of paths yields one composite and a failing pair two.
    """
    sizes = {"g1": n, "g2": n * n, "g3": n * n * n}

    def fn(dom, cod, rule):
        return FinFunction(sizes[dom], sizes[cod], tuple(rule(i) for i in range(sizes[dom])))

    gens = {
        "mul": ("g2", "g1", fn("g2", "g1", lambda i: mu[i // n][i % n])),
        "swap": ("g2", "g2", fn("g2", "g2", lambda i: (i % n) * n + i // n)),
        "pair:e,1": ("g1", "g2", fn("g1", "g2", lambda g: e_idx * n + g)),
        "pair:1,e": ("g1", "g2", fn("g1", "g2", lambda g: g * n + e_idx)),
        "const_e": ("g1", "g1", fn("g1", "g1", lambda g: e_idx)),
        "mul_x_1": ("g3", "g2", fn("g3", "g2", lambda i: mu[i // (n * n)][(i // n) % n] * n + i % n)),
        "1_x_mul": ("g3", "g2", fn("g3", "g2", lambda i: (i // (n * n)) * n + mu[(i // n) % n][i % n])),
    }
    if nu is not None:
        gens["pair:nu,1"] = ("g1", "g2", fn("g1", "g2", lambda g: nu[g] * n + g))
        gens["pair:1,nu"] = ("g1", "g2", fn("g1", "g2", lambda g: g * n + nu[g]))

    objects = ["g1", "g2", "g3"]
    morphisms = [MorData(identity_name(o), o, o) for o in objects]
    identity = {o: identity_name(o) for o in objects}
    fns = {identity_name(o): FinFunction.identity(sizes[o]) for o in objects}
    by_sig = {(o, o, fns[identity_name(o)].mapping): identity_name(o) for o in objects}
    resolve = {}  # generator name -> canonical morphism name (coinciding maps merge)
    for name, (dom, cod, f) in gens.items():
        sig = (dom, cod, f.mapping)
        if sig not in by_sig:
            morphisms.append(MorData(name, dom, cod))
            fns[name] = f
            by_sig[sig] = name
        resolve[name] = by_sig[sig]
    comp = {}
    for m in morphisms:
        comp[(m.name, identity[m.dom])] = m.name
        comp[(identity[m.cod], m.name)] = m.name
    counter = itertools.count()
    dom_of = {m.name: m.dom for m in morphisms}
    cod_of = {m.name: m.cod for m in morphisms}

    def ensure_composite(g, f):
        """Register g after f, naming the result by its function."""
        h = fns[g].after(fns[f])
        sig = (dom_of[f], cod_of[g], h.mapping)
        if sig not in by_sig:
            name = f"w{next(counter)}"
            by_sig[sig] = name
            fns[name] = h
            dom_of[name] = dom_of[f]
            cod_of[name] = cod_of[g]
            morphisms.append(MorData(name, dom_of[f], cod_of[g]))
        comp[(g, f)] = by_sig[sig]
        return by_sig[sig]

    def finish():
        return FinCategory("group-render", objects, morphisms, identity, comp, meta={"fn": fns})

    return resolve, ensure_composite, finish


def check_group(elements, table, identity=None) -> FinGroup:
    """Validate a multiplication table by chasing the three structure
    diagrams; on failure the first broken diagram is reported with an
    element witness."""
    elements = tuple(elements)
    n = len(elements)
    if n == 0:
        raise CheckError("IdentityFail", "a group needs at least one element")
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != n:
        raise CheckError("DuplicateId", "duplicate elements")
    mu = []
    for row in table:
        row = tuple(row)
        if len(row) != n:
            raise CheckError("NotAFunction", "table is not square")
        mu.append(tuple(index[x] if x in index else _bad_entry(x) for x in row))
    if len(mu) != n:
        raise CheckError("NotAFunction", "table is not square")
    mu = tuple(mu)

    if identity is not None:
        e_idx = index[identity]
    else:
        e_idx = next(
            (i for i in range(n) if all(mu[i][j] == j == mu[j][i] for j in range(n))), None
        )
        if e_idx is None:
            raise CheckError("IdentityFail", "no two-sided identity element", witness=None)

    resolve, ensure, finish = _carrier_category(n, mu, e_idx, None)
    for pair in ("pair:e,1", "pair:1,e"):
        ensure(resolve["mul"], resolve[pair])
    for leg in ("mul_x_1", "1_x_mul"):
        ensure(resolve["mul"], resolve[leg])
    cat = finish()

    for pair, side in (("pair:e,1", "left"), ("pair:1,e", "right")):
        ident_diag = build_diagram(
            cat,
            {"in": "g1", "mid": "g2", "out": "g1"},
            [
                ("in", "mid", resolve[pair]),
                ("mid", "out", resolve["mul"]),
                ("in", "out", "id_g1"),
            ],
        )
        v = is_commutative(ident_diag)
        if not v.commutative:
            raise CheckError("IdentityFail", f"{side} identity diagram fails",
                             witness=_unary_witness(cat, v, elements))

    assoc = build_diagram(
        cat,
        {"cube": "g3", "lo": "g2", "hi": "g2", "out": "g1"},
        [
            ("cube", "lo", resolve["mul_x_1"]),
            ("cube", "hi", resolve["1_x_mul"]),
            ("lo", "out", resolve["mul"]),
            ("hi", "out", resolve["mul"]),
        ],
    )
    v = is_commutative(assoc)
    if not v.commutative:
        raise CheckError("AssocFail", "associativity square fails",
                         witness=_triple_witness(cat, v, elements, n))

    nu = []
    for g in range(n):
        hits = [h for h in range(n) if mu[g][h] == e_idx and mu[h][g] == e_idx]
        if not hits:
            raise CheckError("InverseFail", f"{elements[g]!r} has no two-sided inverse",
                             witness=elements[g])
        nu.append(hits[0])
    resolve, ensure, finish = _carrier_category(n, mu, e_idx, tuple(nu))
    for pair in ("pair:nu,1", "pair:1,nu"):
        ensure(resolve["mul"], resolve[pair])
    cat = finish()
    for pair in ("pair:nu,1", "pair:1,nu"):
        inv_diag = build_diagram(
            cat,
            {"in": "g1", "mid": "g2", "out": "g1"},
            [
                ("in", "mid", resolve[pair]),
                ("mid", "out", resolve["mul"]),
                ("in", "out", resolve["const_e"]),
            ],
        )
        v = is_commutative(inv_diag)
        if not v.commutative:
            raise CheckError("InverseFail", "inverse diagram fails",
                             witness=_unary_witness(cat, v, elements))

    for i in range(n):  # Latin square property follows from the axioms
        assert sorted(mu[i]) == list(range(n)) and sorted(r[i] for r in mu) == list(range(n))
    return FinGroup(
        elements,
        mu,
        elements[e_idx],
        {elements[g]: elements[nu[g]] for g in range(n)},
    )


def _bad_entry(x):
    raise CheckError("UnknownObject", f"table entry {x!r} is not an element")


def _differing_index(cat, verdict):
    _, _, m1, m2 = verdict.witness
    f1, f2 = cat.meta["fn"][m1], cat.meta["fn"][m2]
    for i in range(f1.dom_size):
        if f1(i) != f2(i):
            return i
    return 0


def _unary_witness(cat, verdict, elements):
    return elements[_differing_index(cat, verdict)]


def _triple_witness(cat, verdict, elements, n):
    i = _differing_index(cat, verdict)
    return (elements[i // (n * n)], elements[(i // n) % n], elements[i % n])


def is_abelian(g: FinGroup) -> bool:
    """Multiplication unchanged by the switch map."""
    return non_abelian_witness(g) is None


def non_abelian_witness(g: FinGroup):
    n = len(g)
    for i in range(n):
        for j in range(n):
            if g.table[i][j] != g.table[j][i]:
                return (g.elements[i], g.elements[j])
    return None


def cyclic_group(n: int) -> FinGroup:
    names = tuple("e" if i == 0 else f"a{i}" for i in range(n))
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return check_group(names, tuple(tuple(names[v] for v in row) for row in table))


# ---------------------------------------------------------------------------
# Actions


@dataclass(frozen=True)
class ActionData:
    group: FinGroup
    carrier: tuple
    act: dict  # (group element, carrier point) -> carrier point


def check_action(a: ActionData) -> ActionData:
    """Unit and compatibility laws, checked on every tuple."""
    g = a.group
    for x in a.carrier:
        for s in g.elements:
            if (s, x) not in a.act or a.act[(s, x)] not in set(a.carrier):
                raise CheckError("NotAFunction", f"action undefined or out of range at {(s, x)!r}")
    for x in a.carrier:
        if a.act[(g.identity, x)] != x:
            raise CheckError("UnitFail", f"identity moves {x!r}", witness=x)
    for s in g.elements:
        for t in g.elements:
            for x in a.carrier:
                if a.act[(s, a.act[(t, x)])] != a.act[(g.mult(s, t), x)]:
                    raise CheckError(
                        "CompatFail",
                        f"g(hx) differs from (gh)x at {(s, t, x)!r}",
                        witness=(s, t, x),
                    )
    return a


def orbits(a: ActionData) -> ComponentPartition:
    uf = UnionFind(a.carrier)
    for s in a.group.elements:
        for x in a.carrier:
            uf.union(x, a.act[(s, x)])
    return partition_from_unionfind(uf)


# ---------------------------------------------------------------------------
# Homomorphisms


@dataclass(frozen=True)
class GroupHom:
    source: FinGroup
    target: FinGroup
    map: dict


def check_hom(h: GroupHom) -> GroupHom:
    """The defining identity, then the two consequences (identity to
    identity, inverses to inverses) which must follow from it."""
    g, k = h.source, h.target
    for x in g.elements:
        if x not in h.map or h.map[x] not in set(k.elements):
            raise CheckError("NotAFunction", f"map undefined or out of range at {x!r}")
    for x in g.elements:
        for y in g.elements:
            if h.map[g.mult(x, y)] != k.mult(h.map[x], h.map[y]):
                raise CheckError("NotAHom", f"h(xy) != h(x)h(y) at {(x, y)!r}", witness=(x, y))
    assert h.map[g.identity] == k.identity
    assert all(h.map[g.inverse[x]] == k.inverse[h.map[x]] for x in g.elements)
    return h


def _is_subgroup(k: FinGroup, subset) -> bool:
    subset = set(subset)
    if k.identity not in subset:
        return False
    return all(
        k.mult(a, b) in subset and k.inverse[a] in subset for a in subset for b in subset
    )


def kernel(h: GroupHom) -> tuple:
    """Preimage of the target identity; verified to be a normal subgroup."""
    g, k = h.source, h.target
    ker = tuple(x for x in g.elements if h.map[x] == k.identity)
    assert _is_subgroup(g, ker)
    assert all(
        g.mult(g.mult(s, x), g.inverse[s]) in set(ker) for s in g.elements for x in ker
    )
    return ker


def image(h: GroupHom) -> tuple:
    """Set of values; verified to be a subgroup of the target."""
    seen = []
    for x in h.source.elements:
        v = h.map[x]
        if v not in seen:
            seen.append(v)
    assert _is_subgroup(h.target, seen)
    return tuple(seen)


def is_group_mono(h: GroupHom) -> bool:
    """Trivial kernel; cross-checked against injectivity."""
    trivial = kernel(h) == (h.source.identity,)
    injective = len(set(h.map.values())) == len(h.source.elements)
    assert trivial == injective
    return trivial


# ---------------------------------------------------------------------------
# Groups as one-object categories


def group_to_category(g: FinGroup, obj: str = "G") -> FinCategory:
    """One object whose arrows are the elements; composition is the table."""
    names = {x: str(x) for x in g.elements}
    mors = [(names[x], obj, obj) for x in g.elements if x != g.identity]
    comps = []
    for x in g.elements:
        for y in g.elements:
            if x == g.identity or y == g.identity:
                continue
            z = g.mult(x, y)
            comps.append((names[x], names[y], identity_name(obj) if z == g.identity else names[z]))
    return validate_category(RawCategory(f"grp:{obj}", [obj], mors, comps))


def category_to_group(cat: FinCategory) -> FinGroup:
    """Inverse bridge; requires a one-object category of isomorphisms."""
    flags = classify_category(cat)
    if not flags.one_object_group:
        raise CheckError("NotOneObjectGroupoid", f"{cat.name} is not a one-object groupoid")
    obj = cat.objects[0]
    elements = [cat.identity[obj]] + [m.name for m in cat.morphisms if not cat.is_identity(m.name)]
    table = tuple(
        tuple(elements.index(cat.compose(x, y)) for y in elements) for x in elements
    )
    return check_group(
        tuple(elements), tuple(tuple(elements[v] for v in row) for row in table), identity=elements[0]
    )
