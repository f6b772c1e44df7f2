"""Limits and colimits of finite diagrams, the hom-set duality between them,
comma categories, and adjunction verification and search.

Universality is always decided by exhaustive enumeration of hom-sets, which
is possible because every category here is finite.  In the skeleton of
finite sets the concrete subset-of-product and quotient-of-sum formulas are
used and then certified against the universal property.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    FinCategory,
    FinFunction,
    RawCategory,
    find_special_object,
    finset_fn,
    finset_mor_name,
    finset_obj,
    finset_obj_size,
    finset_skeleton,
    identity_name,
    is_finset_skeleton,
    validate_category,
)
from .errors import CheckError
from .functor import (
    COVARIANT,
    FunctorData,
    compose_functors,
    identity_functor,
    lift_functor,
    validate_functor,
)
from .nattrans import NatTransData, check_natural
from .partition import UnionFind

CONE = "cone"
COCONE = "cocone"


@dataclass
class Cone:
    """Apex-plus-legs data over a diagram functor.

    For direction ``cone`` the legs run apex -> F(X); for ``cocone`` they run
    F(X) -> apex and the compatibility triangles are mirrored.
    """

    functor: FunctorData
    apex: str
    legs: dict  # shape object -> morphism name
    direction: str = CONE
    meta: dict = field(default_factory=dict, compare=False)


def check_cone(cone: Cone):
    """Leg endpoints plus the compatibility triangle for every shape arrow."""
    f = cone.functor
    cat = f.target
    if not cat.has_object(cone.apex):
        raise CheckError("NotACone", f"apex {cone.apex!r} is not an object")
    for x in f.source.objects:
        if x not in cone.legs:
            raise CheckError("NotACone", f"missing leg at {x!r}")
        leg = cat.mor(cone.legs[x])
        want = (
            (cone.apex, f.object_map[x]) if cone.direction == CONE else (f.object_map[x], cone.apex)
        )
        if (leg.dom, leg.cod) != want:
            raise CheckError("NotACone", f"leg at {x!r} has wrong endpoints", witness=x)
    for m in f.source.morphisms:
        if f.source.is_identity(m.name):
            continue
        if cone.direction == CONE:
            lhs = cat.compose(f.morphism_map[m.name], cone.legs[m.dom])
            if lhs != cone.legs[m.cod]:
                raise CheckError("NotACone", f"compatibility fails along {m.name}", witness=m.name)
        else:
            lhs = cat.compose(cone.legs[m.cod], f.morphism_map[m.name])
            if lhs != cone.legs[m.dom]:
                raise CheckError("NotACone", f"compatibility fails along {m.name}", witness=m.name)


@dataclass(frozen=True)
class LimitVerdict:
    universal: bool
    # on failure: (competing apex, competing legs, mediator count)
    witness: tuple | None = None

    def __bool__(self):
        return self.universal


def _competing_cones(f: FunctorData, direction, work_cap=None):
    """Every cone over f, grouped by apex in declaration order; legs run
    lexicographically in hom-set declaration order."""
    cat = f.target
    shape = f.source
    objs = list(shape.objects)
    arrows = [m for m in shape.morphisms if not shape.is_identity(m.name)]
    budget = work_cap
    for n in cat.objects:
        if direction == CONE:
            cands = [cat.hom(n, f.object_map[x]) for x in objs]
        else:
            cands = [cat.hom(f.object_map[x], n) for x in objs]
        total = 1
        for c in cands:
            total *= len(c)
        if budget is not None:
            budget -= total
            if budget < 0:
                raise CheckError("SizeBound", "cone enumeration exceeds the work cap")
        for legs in itertools.product(*cands):
            legmap = dict(zip(objs, legs))
            ok = True
            for m in arrows:
                if direction == CONE:
                    if cat.compose(f.morphism_map[m.name], legmap[m.dom]) != legmap[m.cod]:
                        ok = False
                        break
                else:
                    if cat.compose(legmap[m.cod], f.morphism_map[m.name]) != legmap[m.dom]:
                        ok = False
                        break
            if ok:
                yield n, legmap


def _mediator_count(cone: Cone, n, legs, stop_at=2):
    """Number of mediating morphisms from a competing cone, capped."""
    cat = cone.functor.target
    objs = cone.functor.source.objects
    found = 0
    pool = cat.hom(n, cone.apex) if cone.direction == CONE else cat.hom(cone.apex, n)
    for u in pool:
        if cone.direction == CONE:
            if all(cat.compose(cone.legs[x], u) == legs[x] for x in objs):
                found += 1
        else:
            if all(cat.compose(u, cone.legs[x]) == legs[x] for x in objs):
                found += 1
        if found >= stop_at:
            break
    return found


def is_limit_cone(cone: Cone, work_cap: int = 4_000_000) -> LimitVerdict:
    """Exhaustive universality: every competing cone must have exactly one
    mediating morphism into (out of) the apex.

    Checking is fail-fast, so non-universal cones are usually refuted
    cheaply even in large ambients; a full positive verification whose
    mediator scans would exceed the work cap refuses with SizeBound instead
    of silently truncating (the finite-set constructors certify those cases
    pointwise).
    """
    check_cone(cone)
    cat = cone.functor.target
    nlegs = max(len(cone.functor.source.objects), 1)
    spent = 0
    for n, legs in _competing_cones(cone.functor, cone.direction, work_cap):
        pool = cat.hom(n, cone.apex) if cone.direction == CONE else cat.hom(cone.apex, n)
        spent += 1 + len(pool) * nlegs
        if spent > work_cap:
            raise CheckError("SizeBound", "exhaustive universality check exceeds the work cap")
        count = _mediator_count(cone, n, legs)
        if count != 1:
            return LimitVerdict(False, witness=(n, legs, count))
    return LimitVerdict(True)


def _finset_diagram(f: FunctorData):
    if not is_finset_skeleton(f.target) or not f.is_covariant():
        raise CheckError("Mismatch", "expected a covariant functor into a finite-set skeleton")
    sizes = {x: finset_obj_size(f.object_map[x]) for x in f.source.objects}
    arrows = [m for m in f.source.morphisms if not f.source.is_identity(m.name)]
    return sizes, arrows


def _ambient_for(f: FunctorData, needed: int):
    have = f.target.meta["finset_max"]
    if needed <= have:
        return f
    return lift_functor(f, finset_skeleton(needed))


def limit_finset(f: FunctorData) -> Cone:
    """Limit as the compatible-tuple subset of the product, with projections.

    The result is certified: legs form a cone and apex points enumerate the
    compatible tuples bijectively, which in finite sets is equivalent to the
    universal property (each point of a competing apex picks out a
    compatible tuple, so mediators exist and are unique pointwise).
    """
    sizes, arrows = _finset_diagram(f)
    objs = list(f.source.objects)
    pos = {x: i for i, x in enumerate(objs)}
    fns = {m.name: finset_fn(f.target, f.morphism_map[m.name]) for m in arrows}
    tuples = []
    for cand in itertools.product(*(range(sizes[x]) for x in objs)):
        if all(fns[m.name](cand[pos[m.dom]]) == cand[pos[m.cod]] for m in arrows):
            tuples.append(cand)
    size = len(tuples)
    f = _ambient_for(f, size)
    legs = {}
    for x in objs:
        fn = FinFunction(size, sizes[x], tuple(t[pos[x]] for t in tuples))
        legs[x] = finset_mor_name(fn)
    cone = Cone(f, finset_obj(size), legs, CONE, meta={"tuples": tuple(tuples)})
    check_cone(cone)
    if len(set(tuples)) != size:
        raise CheckError("Mismatch", "limit tuples are not distinct")
    return cone


def colimit_finset(f: FunctorData) -> Cone:
    """Colimit as the quotient of the disjoint union by the generated
    relation, with injections; classes ordered by smallest member."""
    sizes, arrows = _finset_diagram(f)
    objs = list(f.source.objects)
    offset = {}
    total = 0
    for x in objs:
        offset[x] = total
        total += sizes[x]
    pairs = []
    for m in arrows:
        fn = finset_fn(f.target, f.morphism_map[m.name])
        for v in range(sizes[m.dom]):
            pairs.append((offset[m.dom] + v, offset[m.cod] + fn(v)))
    uf = UnionFind(range(total))
    for a, b in pairs:
        uf.union(a, b)
    classes = uf.classes()
    class_of = {}
    for i, cls in enumerate(classes):
        for v in cls:
            class_of[v] = i
    size = len(classes)
    f = _ambient_for(f, size)
    legs = {}
    for x in objs:
        fn = FinFunction(sizes[x], size, tuple(class_of[offset[x] + v] for v in range(sizes[x])))
        legs[x] = finset_mor_name(fn)
    cone = Cone(f, finset_obj(size), legs, COCONE, meta={"classes": tuple(classes)})
    check_cone(cone)
    # independent closure recomputation certifies the quotient is exactly
    # the generated relation
    adj = {i: [] for i in range(total)}
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    seen = {}
    nxt = 0
    for start in range(total):
        if start in seen:
            continue
        stack = [start]
        seen[start] = nxt
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen[w] = nxt
                    stack.append(w)
        nxt += 1
    if seen != class_of:
        raise CheckError("Mismatch", "quotient disagrees with the closure of the relation")
    return cone


def search_limit(f: FunctorData, work_cap: int = 4_000_000) -> Cone | None:
    """First universal cone in declaration order, or None when no limit
    exists in the (finite) target category."""
    return _search(f, CONE, work_cap)


def search_colimit(f: FunctorData, work_cap: int = 4_000_000) -> Cone | None:
    return _search(f, COCONE, work_cap)


def _search(f: FunctorData, direction, work_cap) -> Cone | None:
    cat = f.target
    all_cones = list(_competing_cones(f, direction, work_cap))
    counts = {}
    for n, _ in all_cones:
        counts[n] = counts.get(n, 0) + 1
    for apex in cat.objects:
        # a universal apex must biject its hom-sets with the cones from
        # every object, so mismatched counts rule it out outright
        ok = True
        for n in cat.objects:
            pool = cat.hom(n, apex) if direction == CONE else cat.hom(apex, n)
            if len(pool) != counts.get(n, 0):
                ok = False
                break
        if not ok:
            continue
        for n, legs in all_cones:
            if n != apex:
                continue
            cand = Cone(f, apex, dict(legs), direction)
            if _universal_against(cand, all_cones):
                return cand
    return None


def _universal_against(cone: Cone, all_cones) -> bool:
    for n, legs in all_cones:
        if _mediator_count(cone, n, legs) != 1:
            return False
    return True


def cones_isomorphic(a: Cone, b: Cone) -> bool:
    """Two universal (co)cones over the same functor are compared by their
    unique mediators being mutually inverse."""
    if a.functor.source != b.functor.source or a.direction != b.direction:
        return False
    cat = a.functor.target
    objs = a.functor.source.objects
    if a.direction == CONE:
        into_a = [
            u
            for u in cat.hom(b.apex, a.apex)
            if all(cat.compose(a.legs[x], u) == b.legs[x] for x in objs)
        ]
        into_b = [
            v
            for v in cat.hom(a.apex, b.apex)
            if all(cat.compose(b.legs[x], v) == a.legs[x] for x in objs)
        ]
    else:
        into_a = [
            u
            for u in cat.hom(a.apex, b.apex)
            if all(cat.compose(u, a.legs[x]) == b.legs[x] for x in objs)
        ]
        into_b = [
            v
            for v in cat.hom(b.apex, a.apex)
            if all(cat.compose(v, b.legs[x]) == a.legs[x] for x in objs)
        ]
    if len(into_a) != 1 or len(into_b) != 1:
        return False
    u, v = into_a[0], into_b[0]
    if a.direction == CONE:
        return (
            cat.compose(u, v) == cat.identity[a.apex]
            and cat.compose(v, u) == cat.identity[b.apex]
        )
    return (
        cat.compose(v, u) == cat.identity[a.apex]
        and cat.compose(u, v) == cat.identity[b.apex]
    )


def duality_check(f: FunctorData, n) -> bool:
    """Mor(colim F, N) matches the limit of Mor(F(-), N) elementwise.

    The right-hand side is computed as the concrete set of compatible
    hom-tuples (its cardinality can exceed any skeleton bound, so no apex
    object is materialized); the canonical precomposition map must be a
    bijection onto it.
    """
    cat = f.target
    if not cat.has_object(n):
        raise CheckError("UnknownObject", f"no object named {n!r} in {cat.name}")
    if is_finset_skeleton(cat):
        colim = colimit_finset(f)
        cat = colim.functor.target  # possibly lifted
        if not cat.has_object(n):
            raise CheckError("UnknownObject", f"{n!r} vanished when lifting the skeleton")
    else:
        colim = search_colimit(f)
    if colim is None:
        raise CheckError("NoColimit", f"{f.source.name} diagram has no colimit in {cat.name}")
    objs = list(f.source.objects)
    arrows = [m for m in f.source.morphisms if not f.source.is_identity(m.name)]
    hom_at = {x: cat.hom(f.object_map[x], n) for x in objs}
    compatible = []
    for cand in itertools.product(*(hom_at[x] for x in objs)):
        t = dict(zip(objs, cand))
        if all(cat.compose(t[m.cod], f.morphism_map[m.name]) == t[m.dom] for m in arrows):
            compatible.append(cand)
    lhs = cat.hom(colim.apex, n)
    image = []
    for v in lhs:
        image.append(tuple(cat.compose(v, colim.legs[x]) for x in objs))
    return (
        len(lhs) == len(compatible)
        and len(set(image)) == len(image)
        and set(image) == set(compatible)
    )


# ---------------------------------------------------------------------------
# Comma categories


@dataclass
class CommaCategory:
    category: FinCategory
    projection: FunctorData  # into the functor's source category
    pairs: dict  # comma object name -> (object, arrow name)


def _comma_obj(b, arr):
    return f"{b}|{arr}"


def _comma_mor(m, src_obj):
    return f"{m}@{src_obj}"


def comma_category(a, g: FunctorData, limit: int = 10_000) -> CommaCategory:
    """Objects are arrows a -> G(B); morphisms are the K-morphisms whose
    G-image commutes with the two arrows."""
    k, l = g.source, g.target
    if not l.has_object(a):
        raise CheckError("UnknownObject", f"no object named {a!r} in {l.name}")
    pairs = {}
    for b in k.objects:
        for arr in l.hom(a, g.object_map[b]):
            pairs[_comma_obj(b, arr)] = (b, arr)
    if len(pairs) > limit:
        raise CheckError("SizeBound", f"comma category would have {len(pairs)} objects")
    return _assemble_comma(
        pairs,
        k,
        name=f"({a}|{g.source.name})",
        arrow_ok=lambda m, src, dst: l.compose(g.morphism_map[m.name], src[1]) == dst[1],
    )


def comma_to_object(f: FunctorData, b, limit: int = 10_000) -> CommaCategory:
    """Dual comma: objects are arrows F(A) -> b."""
    l, k = f.source, f.target
    if not k.has_object(b):
        raise CheckError("UnknownObject", f"no object named {b!r} in {k.name}")
    pairs = {}
    for a in l.objects:
        for arr in k.hom(f.object_map[a], b):
            pairs[_comma_obj(a, arr)] = (a, arr)
    if len(pairs) > limit:
        raise CheckError("SizeBound", f"comma category would have {len(pairs)} objects")
    return _assemble_comma(
        pairs,
        l,
        name=f"({f.source.name}|{b})",
        arrow_ok=lambda m, src, dst: k.compose(dst[1], f.morphism_map[m.name]) == src[1],
    )


def _assemble_comma(pairs, base: FinCategory, name, arrow_ok) -> CommaCategory:
    objects = list(pairs)
    mors = []
    carried = {}  # comma morphism name -> (base morphism, src pair name, dst pair name)
    for src_name, src in pairs.items():
        for dst_name, dst in pairs.items():
            for m in base.morphisms:
                if (m.dom, m.cod) != (src[0], dst[0]):
                    continue
                if base.is_identity(m.name) and src_name == dst_name:
                    continue  # the comma identity, synthesized
                if arrow_ok(m, src, dst):
                    cname = _comma_mor(m.name, src_name)
                    if base.is_identity(m.name):
                        continue  # identity base arrow between distinct comma objects is impossible
                    mors.append((cname, src_name, dst_name))
                    carried[cname] = (m.name, src_name, dst_name)
    comps = []
    by_src = {}
    for cname, (m, s, d) in carried.items():
        by_src.setdefault(s, []).append((cname, m, d))
    for cname, (m1, s1, d1) in carried.items():
        for cname2, m2, d2 in by_src.get(d1, ()):
            h = base.compose(m2, m1)
            if base.is_identity(h) and d2 == s1:
                continue  # composite is the synthesized identity
            comps.append((cname2, cname, _comma_mor(h, s1)))
    raw = RawCategory(name, objects, mors, comps)
    cat = validate_category(raw)
    proj = validate_functor(
        FunctorData(
            cat,
            base,
            COVARIANT,
            {o: pairs[o][0] for o in objects},
            {
                **{identity_name(o): base.identity[pairs[o][0]] for o in objects},
                **{cname: m for cname, (m, _, _) in carried.items()},
            },
        )
    )
    return CommaCategory(cat, proj, pairs)


# ---------------------------------------------------------------------------
# Adjunctions


@dataclass
class AdjunctionData:
    """F left adjoint to G, with the hom bijection tables and both
    structure transformations."""

    F: FunctorData  # L -> K
    G: FunctorData  # K -> L
    phi: dict  # (A, B) -> {f in Mor(F A, B): g in Mor(A, G B)}
    unit: NatTransData  # 1_L -> G o F
    counit: NatTransData  # F o G -> 1_K


@dataclass(frozen=True)
class AdjunctionVerdict:
    ok: bool
    failure: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.ok


def _check_arrangement(adj: AdjunctionData):
    f, g = adj.F, adj.G
    if f.source != g.target or f.target != g.source:
        raise CheckError("Mismatch", "adjoint pair is not arranged L -> K, K -> L")
    if not (f.is_covariant() and g.is_covariant()):
        raise CheckError("Mismatch", "both adjoints must be stored covariantly")


def check_adjunction(adj: AdjunctionData, mode: str = "both") -> AdjunctionVerdict:
    """Verify the hom bijection with its two-sided naturality, or the
    unit/counit laws with the triangle identities, or everything plus their
    mutual consistency."""
    if mode not in ("hom_bijection", "unit_counit", "both"):
        raise CheckError("Mismatch", f"unknown mode {mode!r}")
    _check_arrangement(adj)
    if mode in ("hom_bijection", "both"):
        v = _check_hom_bijection(adj)
        if not v.ok:
            return v
    if mode in ("unit_counit", "both"):
        v = _check_unit_counit(adj)
        if not v.ok:
            return v
    if mode == "both":
        v = _check_phi_unit_consistency(adj)
        if not v.ok:
            return v
    return AdjunctionVerdict(True)


def _check_hom_bijection(adj: AdjunctionData) -> AdjunctionVerdict:
    f, g = adj.F, adj.G
    l, k = f.source, f.target
    for a in l.objects:
        for b in k.objects:
            table = adj.phi.get((a, b))
            if table is None:
                return AdjunctionVerdict(False, "missing phi table", (a, b))
            dom = k.hom(f.object_map[a], b)
            cod = l.hom(a, g.object_map[b])
            if sorted(table) != sorted(dom):
                return AdjunctionVerdict(False, "phi not total on its hom-set", (a, b))
            values = list(table.values())
            if sorted(set(values)) != sorted(cod) or len(set(values)) != len(values):
                return AdjunctionVerdict(False, "phi is not a bijection", (a, b))
    # naturality in both slots: phi(g2 o x o F(h)) = G(g2) o phi(x) o h
    for a in l.objects:
        for b in k.objects:
            for x in k.hom(f.object_map[a], b):
                for g2 in (m for m in k.morphisms if m.dom == b):
                    for h in (m for m in l.morphisms if m.cod == a):
                        lhs_arg = k.compose(g2.name, k.compose(x, f.morphism_map[h.name]))
                        lhs = adj.phi[(h.dom, g2.cod)][lhs_arg]
                        rhs = l.compose(
                            g.morphism_map[g2.name], l.compose(adj.phi[(a, b)][x], h.name)
                        )
                        if lhs != rhs:
                            return AdjunctionVerdict(
                                False, "phi naturality fails", (a, b, x, g2.name, h.name)
                            )
    return AdjunctionVerdict(True)


def _check_unit_counit(adj: AdjunctionData) -> AdjunctionVerdict:
    f, g = adj.F, adj.G
    l, k = f.source, f.target
    if adj.unit.F != identity_functor(l) or adj.unit.G != compose_functors(g, f):
        raise CheckError("Mismatch", "unit is not a transformation 1 -> G o F")
    if adj.counit.F != compose_functors(f, g) or adj.counit.G != identity_functor(k):
        raise CheckError("Mismatch", "counit is not a transformation F o G -> 1")
    v = check_natural(adj.unit)
    if not v:
        return AdjunctionVerdict(False, "unit not natural", (v.witness,))
    v = check_natural(adj.counit)
    if not v:
        return AdjunctionVerdict(False, "counit not natural", (v.witness,))
    for b in k.objects:
        gb = g.object_map[b]
        lhs = l.compose(g.morphism_map[adj.counit.components[b]], adj.unit.components[gb])
        if lhs != l.identity[gb]:
            return AdjunctionVerdict(False, "triangle identity on G fails", (b,))
    for a in l.objects:
        fa = f.object_map[a]
        lhs = k.compose(adj.counit.components[fa], f.morphism_map[adj.unit.components[a]])
        if lhs != k.identity[fa]:
            return AdjunctionVerdict(False, "triangle identity on F fails", (a,))
    return AdjunctionVerdict(True)


def _check_phi_unit_consistency(adj: AdjunctionData) -> AdjunctionVerdict:
    f, g = adj.F, adj.G
    l, k = f.source, f.target
    for a in l.objects:
        for b in k.objects:
            for x in k.hom(f.object_map[a], b):
                want = l.compose(g.morphism_map[x], adj.unit.components[a])
                if adj.phi[(a, b)][x] != want:
                    return AdjunctionVerdict(False, "phi disagrees with G(f) o unit", (a, b, x))
    return AdjunctionVerdict(True)


def adjunction_from_unit(f: FunctorData, g: FunctorData, unit: NatTransData) -> AdjunctionData:
    """Complete an adjunction from its unit: phi via G then precompose the
    unit, counit as the phi-preimage of each identity."""
    l, k = f.source, f.target
    phi = {}
    for a in l.objects:
        for b in k.objects:
            phi[(a, b)] = {
                x: l.compose(g.morphism_map[x], unit.components[a])
                for x in k.hom(f.object_map[a], b)
            }
    counit_comp = {}
    for b in k.objects:
        gb = g.object_map[b]
        hits = [x for x, v in phi[(gb, b)].items() if v == l.identity[gb]]
        if len(hits) != 1:
            raise CheckError(
                "Mismatch", f"no unique counit component at {b!r}", witness=(b, len(hits))
            )
        counit_comp[b] = hits[0]
    unit_t = NatTransData(identity_functor(l), compose_functors(g, f), dict(unit.components))
    counit_t = NatTransData(compose_functors(f, g), identity_functor(k), counit_comp)
    return AdjunctionData(f, g, phi, unit_t, counit_t)


def find_adjoint(g: FunctorData, side: str = "left") -> AdjunctionData | None:
    """Assemble the requested adjoint from universal arrows, or None.

    side="left": the input is G: K -> L and the left adjoint value at A is
    an initial object of the comma category (A | G).  side="right": the
    input plays the F role and terminal objects of (F | B) are used.
    The returned data is verified in full before being handed back.
    """
    if side == "left":
        adj = _left_adjoint_of(g)
    elif side == "right":
        adj = _right_adjoint_of(g)
    else:
        raise CheckError("Mismatch", f"unknown side {side!r}")
    if adj is None:
        return None
    verdict = check_adjunction(adj, "both")
    if not verdict:
        raise CheckError(
            "Mismatch", f"assembled adjunction failed verification: {verdict.failure}",
            witness=verdict.witness,
        )
    return adj


def _left_adjoint_of(g: FunctorData) -> AdjunctionData | None:
    k, l = g.source, g.target
    univ = {}
    for a in l.objects:
        comma = comma_category(a, g)
        init = find_special_object(comma.category, "initial")
        if init is None:
            return None
        univ[a] = comma.pairs[init]  # (B_a, eta_a)
    object_map = {a: univ[a][0] for a in l.objects}
    unit_comp = {a: univ[a][1] for a in l.objects}
    morphism_map = {}
    for m in l.morphisms:
        target_arr = l.compose(unit_comp[m.cod], m.name)
        hits = [
            b
            for b in k.hom(object_map[m.dom], object_map[m.cod])
            if l.compose(g.morphism_map[b], unit_comp[m.dom]) == target_arr
        ]
        if len(hits) != 1:
            raise CheckError(
                "Mismatch",
                f"universal arrow at {m.dom!r} does not factor {m.name!r} uniquely",
                witness=(m.name, len(hits)),
            )
        morphism_map[m.name] = hits[0]
    f = validate_functor(FunctorData(l, k, COVARIANT, object_map, morphism_map))
    unit = NatTransData(identity_functor(l), compose_functors(g, f), unit_comp)
    return adjunction_from_unit(f, g, unit)


def _right_adjoint_of(f: FunctorData) -> AdjunctionData | None:
    l, k = f.source, f.target
    univ = {}
    for b in k.objects:
        comma = comma_to_object(f, b)
        term = find_special_object(comma.category, "terminal")
        if term is None:
            return None
        univ[b] = comma.pairs[term]  # (A_b, eps_b)
    object_map = {b: univ[b][0] for b in k.objects}
    counit_comp = {b: univ[b][1] for b in k.objects}
    morphism_map = {}
    for m in k.morphisms:
        src_arr = k.compose(m.name, counit_comp[m.dom])
        hits = [
            h
            for h in l.hom(object_map[m.dom], object_map[m.cod])
            if k.compose(counit_comp[m.cod], f.morphism_map[h]) == src_arr
        ]
        if len(hits) != 1:
            raise CheckError(
                "Mismatch",
                f"universal arrow at {m.dom!r} does not factor {m.name!r} uniquely",
                witness=(m.name, len(hits)),
            )
        morphism_map[m.name] = hits[0]
    g = validate_functor(FunctorData(k, l, COVARIANT, object_map, morphism_map))
    unit_comp = {}
    for a in l.objects:
        fa = f.object_map[a]
        hits = [
            h
            for h in l.hom(a, g.object_map[fa])
            if k.compose(counit_comp[fa], f.morphism_map[h]) == k.identity[fa]
        ]
        if len(hits) != 1:
            raise CheckError("Mismatch", f"no unique unit component at {a!r}", witness=(a, len(hits)))
        unit_comp[a] = hits[0]
    unit = NatTransData(identity_functor(l), compose_functors(g, f), unit_comp)
    return adjunction_from_unit(f, g, unit)


def apply_functor_to_cone(g: FunctorData, cone: Cone) -> Cone:
    """The image cone under a covariant functor."""
    if not g.is_covariant():
        raise CheckError("Mismatch", "cone images need a covariant functor")
    return Cone(
        compose_functors(g, cone.functor),
        g.object_map[cone.apex],
        {x: g.morphism_map[m] for x, m in cone.legs.items()},
        cone.direction,
    )


def preservation_check(adj: AdjunctionData, dia: FunctorData, side: str = "right") -> bool:
    """Right adjoints preserve limits, left adjoints preserve colimits.

    side="right": dia maps into the right adjoint's source; its limit cone
    is pushed through G and must again be universal.  side="left" is the
    colimit statement for F.
    """
    _check_arrangement(adj)
    if side == "right":
        if dia.target != adj.G.source:
            raise CheckError("Mismatch", "diagram does not land in the right adjoint's source")
        cone = search_limit(dia)
        if cone is None:
            raise CheckError("NoLimit", "diagram has no limit to preserve")
        image = apply_functor_to_cone(adj.G, cone)
        return bool(is_limit_cone(image))
    if side == "left":
        if dia.target != adj.F.source:
            raise CheckError("Mismatch", "diagram does not land in the left adjoint's source")
        cone = search_colimit(dia)
        if cone is None:
            raise CheckError("NoLimit", "diagram has no colimit to preserve")
        image = apply_functor_to_cone(adj.F, cone)
        return bool(is_limit_cone(image))
    raise CheckError("Mismatch", f"unknown side {side!r}")
