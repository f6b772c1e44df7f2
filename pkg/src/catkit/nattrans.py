"""Natural transformations: naturality squares, the two composition laws and
their interchange, natural isomorphisms, functor categories, and ends/coends
of finite-set-valued bifunctors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    FinCategory,
    FinFunction,
    MorData,
    RawCategory,
    FinCategory as _Cat,
    finset_fn,
    finset_mor_name,
    finset_obj,
    finset_obj_size,
    finset_skeleton,
    identity_name,
    is_finset_skeleton,
    pair_mor,
    pair_obj,
    un_op_name,
    validate_category,
)
from .errors import CheckError
from .functor import COVARIANT, FunctorData, compose_functors, validate_functor
from .partition import UnionFind

__all__ = [
    "NatTransData",
    "NaturalityVerdict",
    "Wedge",
    "EndResult",
    "check_natural",
    "identity_transformation",
    "vcompose",
    "godement",
    "check_interchange",
    "is_natural_iso",
    "functor_category",
    "enumerate_functors",
    "end_finset",
    "coend_finset",
    "end_equals_limit_check",
]


@dataclass
class NatTransData:
    """A component family between two parallel functors."""

    F: FunctorData
    G: FunctorData
    components: dict  # source object -> morphism name in the target

    def at(self, a):
        return self.components[a]


@dataclass(frozen=True)
class NaturalityVerdict:
    natural: bool
    witness: str | None = None  # first morphism whose square fails

    def __bool__(self):
        return self.natural


def _require_parallel(f: FunctorData, g: FunctorData):
    if f.source != g.source or f.target != g.target or f.variance != g.variance:
        raise CheckError("Mismatch", "functors are not parallel")


def check_natural(t: NatTransData) -> NaturalityVerdict:
    """Does every naturality square commute?  Witness is the first failing
    source morphism in declaration order."""
    _require_parallel(t.F, t.G)
    src, tgt = t.F.source, t.F.target
    for a in src.objects:
        if a not in t.components:
            raise CheckError("Mismatch", f"no component at {a!r}")
        comp = tgt.mor(t.components[a])
        if (comp.dom, comp.cod) != (t.F.object_map[a], t.G.object_map[a]):
            raise CheckError(
                "ComponentEndpointMismatch",
                f"component at {a!r} has endpoints {comp.dom} -> {comp.cod}",
                witness=a,
            )
    for m in src.morphisms:
        if t.F.is_covariant():
            lhs = tgt.compose(t.G.morphism_map[m.name], t.components[m.dom])
            rhs = tgt.compose(t.components[m.cod], t.F.morphism_map[m.name])
        else:
            lhs = tgt.compose(t.G.morphism_map[m.name], t.components[m.cod])
            rhs = tgt.compose(t.components[m.dom], t.F.morphism_map[m.name])
        if lhs != rhs:
            return NaturalityVerdict(False, witness=m.name)
    return NaturalityVerdict(True)


def identity_transformation(f: FunctorData) -> NatTransData:
    tgt = f.target
    return NatTransData(f, f, {a: tgt.identity[f.object_map[a]] for a in f.source.objects})


def vcompose(beta: NatTransData, alpha: NatTransData) -> NatTransData:
    """Componentwise composite of alpha: F -> G then beta: G -> H."""
    if alpha.G != beta.F:
        raise CheckError("Mismatch", "middle functors disagree")
    tgt = alpha.F.target
    comps = {
        a: tgt.compose(beta.components[a], alpha.components[a])
        for a in alpha.F.source.objects
    }
    return NatTransData(alpha.F, beta.G, comps)


def godement(beta: NatTransData, alpha: NatTransData) -> NatTransData:
    """Godement product: alpha between functors A -> B, beta between
    functors B -> C, giving a transformation HF -> KG.

    Both defining formulas are computed and must agree (this is exactly the
    naturality of beta); only covariant arrangements are supported.
    """
    for t in (alpha, beta):
        if not t.F.is_covariant():
            raise CheckError("Mismatch", "Godement product requires covariant functors")
    if alpha.F.target != beta.F.source:
        raise CheckError("Mismatch", "categories are not arranged A -> B -> C")
    h, k = beta.F, beta.G
    ccat = h.target
    comps = {}
    for a in alpha.F.source.objects:
        via_h = ccat.compose(beta.components[alpha.G.object_map[a]], h.morphism_map[alpha.components[a]])
        via_k = ccat.compose(k.morphism_map[alpha.components[a]], beta.components[alpha.F.object_map[a]])
        if via_h != via_k:
            raise CheckError(
                "Mismatch", f"the two Godement formulas disagree at {a!r}; beta is not natural",
                witness=a,
            )
        comps[a] = via_h
    return NatTransData(compose_functors(h, alpha.F), compose_functors(k, alpha.G), comps)


def check_interchange(alpha, beta, gamma, delta) -> bool:
    """(delta * gamma) o (beta * alpha) = (delta o beta) * (gamma o alpha)."""
    lhs = vcompose(godement(delta, gamma), godement(beta, alpha))
    rhs = godement(vcompose(delta, beta), vcompose(gamma, alpha))
    return lhs.components == rhs.components


def is_natural_iso(t: NatTransData):
    """(True, inverse transformation) when all components are isomorphisms."""
    from .core import classify_morphism

    tgt = t.F.target
    inverse = {}
    for a in t.F.source.objects:
        flags = classify_morphism(tgt, t.components[a])
        if not flags.iso:
            return False, None
        inverse[a] = flags.inverse
    inv = NatTransData(t.G, t.F, inverse)
    verdict = check_natural(inv)
    if not verdict:
        raise CheckError(
            "Mismatch", "inverse family is not natural; the input was not natural", witness=verdict.witness
        )
    return True, inv


# ---------------------------------------------------------------------------
# Functor categories


def enumerate_functors(k: FinCategory, l: FinCategory, cap: int = 100_000):
    """All covariant functors k -> l in a deterministic enumeration order."""
    objs = list(k.objects)
    nonid = [m for m in k.morphisms if not k.is_identity(m.name)]
    if len(l.objects) ** max(len(objs), 1) > cap:
        raise CheckError("SizeBound", "too many candidate object maps")
    out = []
    for images in itertools.product(l.objects, repeat=len(objs)):
        omap = dict(zip(objs, images))
        cands = [l.hom(omap[m.dom], omap[m.cod]) for m in nonid]
        total = 1
        for c in cands:
            total *= len(c)
        if total > cap:
            raise CheckError("SizeBound", "too many candidate morphism maps")
        for assign in itertools.product(*cands):
            mmap = {m.name: a for m, a in zip(nonid, assign)}
            for o in objs:
                mmap[k.identity[o]] = l.identity[omap[o]]
            cand = FunctorData(k, l, COVARIANT, omap, mmap)
            try:
                validate_functor(cand)
            except CheckError:
                continue
            out.append(cand)
    return out


def functor_category(k: FinCategory, l: FinCategory, limit: int = 10_000) -> FinCategory:
    """Objects all covariant functors k -> l, morphisms all natural
    transformations, composition componentwise.

    Refuses with SizeBound when the number of functors times the number of
    source objects exceeds the limit.
    """
    functors = enumerate_functors(k, l, cap=limit)
    if len(functors) * max(len(k.objects), 1) > limit:
        raise CheckError("SizeBound", f"{len(functors)} functors over {len(k.objects)} objects")
    fnames = [f"F{i}" for i in range(len(functors))]
    named = dict(zip(fnames, functors))

    transformations = {}
    mors = []
    by_key = {}  # (i, j, component tuple) -> name
    counter = 0
    for i, fi in enumerate(functors):
        for j, fj in enumerate(functors):
            cands = [l.hom(fi.object_map[a], fj.object_map[a]) for a in k.objects]
            for comps in itertools.product(*cands):
                t = NatTransData(fi, fj, dict(zip(k.objects, comps)))
                if not check_natural(t):
                    continue
                if i == j and all(l.is_identity(c) for c in comps):
                    by_key[(i, j, comps)] = identity_name(fnames[i])
                    transformations[identity_name(fnames[i])] = t
                    continue
                name = f"t{counter}"
                counter += 1
                transformations[name] = t
                mors.append((name, fnames[i], fnames[j], (i, j, comps)))
                by_key[(i, j, comps)] = name

    index_of = {n: i for i, n in enumerate(fnames)}
    comps_entries = []
    for name_g, src_g, dst_g, key_g in mors:
        for name_f, src_f, dst_f, key_f in mors:
            if dst_f != src_g:
                continue
            t = vcompose(transformations[name_g], transformations[name_f])
            comps = tuple(t.components[a] for a in k.objects)
            h = by_key[(index_of[src_f], index_of[dst_g], comps)]
            comps_entries.append((name_g, name_f, h))
    raw = RawCategory(
        f"[{k.name},{l.name}]",
        fnames,
        [(n, s, d) for n, s, d, _ in mors],
        comps_entries,
    )
    cat = validate_category(raw)
    cat.meta["functors"] = named
    cat.meta["transformations"] = transformations
    return cat


# ---------------------------------------------------------------------------
# Ends and coends of finite-set-valued bifunctors


@dataclass
class Wedge:
    """A dinatural family from a constant set into the diagonal of a
    bifunctor; components are concrete functions from the apex."""

    bifunctor: FunctorData
    apex: str  # finite-set object name s<k>
    components: dict  # base object -> FinFunction


@dataclass
class EndResult:
    object: str
    wedge: Wedge
    universal: bool
    elements: tuple  # end: compatible tuples; coend: classes of the quotient


def _bifunctor_parts(s: FunctorData):
    """Recover (base, opposite) from a bifunctor on op(C) x C."""
    if not is_finset_skeleton(s.target):
        raise CheckError("Mismatch", "bifunctor must be valued in a finite-set skeleton")
    try:
        opc, base = s.source.meta["product_of"]
    except KeyError:
        raise CheckError("Mismatch", "bifunctor source is not a product category") from None
    if opc.meta.get("opposite_of") != base:
        raise CheckError("Mismatch", "bifunctor source is not op(C) x C")
    if not s.is_covariant():
        raise CheckError("Mismatch", "bifunctor must be stored covariantly on op(C) x C")
    return base, opc


def _diag_sizes(s: FunctorData, base):
    return {c: finset_obj_size(s.object_map[pair_obj(c, c)]) for c in base.objects}


def _end_actions(s: FunctorData, base, opc):
    """For each non-identity f: c -> c' the pair of functions landing in the
    mixed set S(c, c'): the second-slot action out of S(c,c) and the
    first-slot action out of S(c',c')."""
    out = []
    for m in base.morphisms:
        if base.is_identity(m.name):
            continue
        second = finset_fn(
            s.target, s.morphism_map[pair_mor(opc, base, base.identity[m.dom], m.name)]
        )
        first = finset_fn(
            s.target, s.morphism_map[pair_mor(opc, base, "op_" + m.name, base.identity[m.cod])]
        )
        out.append((m, second, first))
    return out


def _coend_actions(s: FunctorData, base, opc):
    """For each non-identity f: c -> c' the pair of functions out of the
    mixed set S(c', c): into S(c,c) via the first slot and into S(c',c')
    via the second slot."""
    out = []
    for m in base.morphisms:
        if base.is_identity(m.name):
            continue
        to_dom = finset_fn(
            s.target, s.morphism_map[pair_mor(opc, base, "op_" + m.name, base.identity[m.dom])]
        )
        to_cod = finset_fn(
            s.target, s.morphism_map[pair_mor(opc, base, opc.identity[m.cod], m.name)]
        )
        out.append((m, to_dom, to_cod))
    return out


def wedge_is_dinatural(w: Wedge) -> bool:
    """S(c,f) after the c-component equals S(f,c') after the c'-component."""
    base, opc = _bifunctor_parts(w.bifunctor)
    for m, second, first in _end_actions(w.bifunctor, base, opc):
        if second.after(w.components[m.dom]).mapping != first.after(w.components[m.cod]).mapping:
            return False
    return True


def cowedge_is_dinatural(w: Wedge) -> bool:
    """Dual condition: both ways around from each mixed set agree."""
    base, opc = _bifunctor_parts(w.bifunctor)
    for m, to_dom, to_cod in _coend_actions(w.bifunctor, base, opc):
        if (
            w.components[m.dom].after(to_dom).mapping
            != w.components[m.cod].after(to_cod).mapping
        ):
            return False
    return True


def end_finset(s: FunctorData) -> EndResult:
    """Subset of the product of the diagonal sets cut out by every
    compatibility equation, with the projection wedge.

    Universality is certified by the pointwise factorization criterion: a
    dinatural family from a finite set sends each apex point to a compatible
    tuple, so the wedge is universal exactly when the apex enumerates the
    compatible tuples without repetition, which is re-verified here rather
    than assumed from the construction.
    """
    base, opc = _bifunctor_parts(s)
    sizes = _diag_sizes(s, base)
    acts = _end_actions(s, base, opc)
    objs = list(base.objects)
    pos = {c: i for i, c in enumerate(objs)}
    tuples = []
    for cand in itertools.product(*(range(sizes[c]) for c in objs)):
        if all(second(cand[pos[m.dom]]) == first(cand[pos[m.cod]]) for m, second, first in acts):
            tuples.append(cand)
    e = len(tuples)
    comps = {c: FinFunction(e, sizes[c], tuple(t[pos[c]] for t in tuples)) for c in objs}
    wedge = Wedge(s, finset_obj(e), comps)
    universal = wedge_is_dinatural(wedge) and len(set(tuples)) == e
    return EndResult(finset_obj(e), wedge, universal, tuple(tuples))


def coend_finset(s: FunctorData) -> EndResult:
    """Quotient of the disjoint union of the diagonal sets by the relation
    generated by identifying the two images of every mixed element, with the
    injection wedge.

    Classes are ordered by their smallest member in the disjoint-union
    order, so representatives are deterministic.  Universality is certified
    by re-deriving the partition with a breadth-first closure independent of
    the union-find and checking the injections against it.
    """
    base, opc = _bifunctor_parts(s)
    sizes = _diag_sizes(s, base)
    objs = list(base.objects)
    offset = {}
    total = 0
    for c in objs:
        offset[c] = total
        total += sizes[c]
    pairs = []
    for m, to_dom, to_cod in _coend_actions(s, base, opc):
        for y in range(to_dom.dom_size):
            pairs.append((offset[m.dom] + to_dom(y), offset[m.cod] + to_cod(y)))
    uf = UnionFind(range(total))
    for a, b in pairs:
        uf.union(a, b)
    classes = uf.classes()
    class_of = {}
    for i, cls in enumerate(classes):
        for x in cls:
            class_of[x] = i
    d = len(classes)
    comps = {
        c: FinFunction(sizes[c], d, tuple(class_of[offset[c] + i] for i in range(sizes[c])))
        for c in objs
    }
    wedge = Wedge(s, finset_obj(d), comps)
    universal = cowedge_is_dinatural(wedge) and class_of == _closure_by_bfs(total, pairs)
    return EndResult(finset_obj(d), wedge, universal, tuple(classes))


def _closure_by_bfs(total, pairs):
    """Connected components of the identification graph, found by BFS;
    class indices assigned by smallest element, matching the quotient."""
    adj = {i: [] for i in range(total)}
    for a, b in pairs:
        adj[a].append(b)
        adj[b].append(a)
    class_of = {}
    next_class = 0
    for start in range(total):
        if start in class_of:
            continue
        queue = [start]
        class_of[start] = next_class
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if y not in class_of:
                    class_of[y] = next_class
                    queue.append(y)
        next_class += 1
    return class_of


def bifunctor_with_dummy_first_slot(t: FunctorData) -> FunctorData:
    """Turn T: C -> FinSet into S on op(C) x C with S(b, c) = T(c)."""
    from .core import opposite_category, product_category

    base = t.source
    if not is_finset_skeleton(t.target) or not t.is_covariant():
        raise CheckError("Mismatch", "expected a covariant functor into a finite-set skeleton")
    opc = opposite_category(base)
    src = product_category(opc, base)
    object_map = {}
    for a in base.objects:
        for b in base.objects:
            object_map[pair_obj(a, b)] = t.object_map[b]
    morphism_map = {}
    for m1 in opc.morphisms:
        for m2 in base.morphisms:
            name = pair_mor(opc, base, m1.name, m2.name)
            morphism_map[name] = t.morphism_map[m2.name]
    return validate_functor(FunctorData(src, t.target, COVARIANT, object_map, morphism_map))


def end_equals_limit_check(t: FunctorData) -> bool:
    """The end of the dummy-slot bifunctor of T is the limit of T: sizes
    agree and the projection wedge matches the limit cone pointwise."""
    from .universal import limit_finset

    s = bifunctor_with_dummy_first_slot(t)
    end = end_finset(s)
    cone = limit_finset(t)
    if finset_obj_size(end.object) != finset_obj_size(cone.apex):
        return False
    if not end.universal:
        return False
    if set(end.elements) != set(cone.meta["tuples"]):
        return False
    ambient = cone.functor.target
    for c in t.source.objects:
        leg_fn = finset_fn(ambient, cone.legs[c])
        if end.wedge.components[c].mapping != leg_fn.mapping:
            return False
    return True
