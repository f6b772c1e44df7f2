"""Functors between finite categories: the three laws, variance,
classification, canonical constructions, and monoidal bifunctoriality."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    FinCategory,
    FinFunction,
    finset_mor_name,
    finset_obj,
    finset_skeleton,
    is_finset_skeleton,
    opposite_category,
    pair_mor,
    pair_obj,
    product_category,
)
from .diagram import Diagram, CommutativityVerdict, build_diagram, is_commutative
from .errors import CheckError

COVARIANT = "covariant"
CONTRAVARIANT = "contravariant"


@dataclass
class FunctorData:
    """Object and morphism maps between two categories.

    ``variance`` selects which composition law applies; contravariant
    functors are stored against the plain target category with the reversed
    law rather than re-targeted to the opposite category.
    """

    source: FinCategory
    target: FinCategory
    variance: str
    object_map: dict
    morphism_map: dict
    meta: dict = field(default_factory=dict, compare=False)

    def on_obj(self, a):
        return self.object_map[a]

    def on_mor(self, m):
        return self.morphism_map[m]

    def is_covariant(self):
        return self.variance == COVARIANT


def validate_functor(f: FunctorData) -> FunctorData:
    """Check totality plus the three functor laws; returns its argument."""
    if f.variance not in (COVARIANT, CONTRAVARIANT):
        raise CheckError("EndpointViolation", f"unknown variance {f.variance!r}")
    src, tgt = f.source, f.target
    for a in src.objects:
        if a not in f.object_map:
            raise CheckError("NotTotal", f"object map misses {a!r}")
        if not tgt.has_object(f.object_map[a]):
            raise CheckError("EndpointViolation", f"object {a!r} mapped outside the target")
    for m in src.morphisms:
        if m.name not in f.morphism_map:
            raise CheckError("NotTotal", f"morphism map misses {m.name!r}")
        img = tgt.mor(f.morphism_map[m.name])
        if f.is_covariant():
            want = (f.object_map[m.dom], f.object_map[m.cod])
        else:
            want = (f.object_map[m.cod], f.object_map[m.dom])
        if (img.dom, img.cod) != want:
            raise CheckError(
                "EndpointViolation",
                f"image of {m.name} has endpoints {img.dom} -> {img.cod}, expected "
                f"{want[0]} -> {want[1]}",
                witness=m.name,
            )
    for a in src.objects:
        if f.morphism_map[src.identity[a]] != tgt.identity[f.object_map[a]]:
            raise CheckError(
                "IdentityViolation", f"identity of {a!r} not sent to an identity", witness=a
            )
    for g, h in src.composable_pairs():
        lhs = f.morphism_map[src.compose(g, h)]
        if f.is_covariant():
            rhs = tgt.compose(f.morphism_map[g], f.morphism_map[h])
        else:
            rhs = tgt.compose(f.morphism_map[h], f.morphism_map[g])
        if lhs != rhs:
            raise CheckError(
                "CompositionViolation",
                f"image of {g} after {h} disagrees with the composed images",
                witness=(g, h),
            )
    return f


def identity_functor(cat: FinCategory) -> FunctorData:
    return FunctorData(
        cat,
        cat,
        COVARIANT,
        {a: a for a in cat.objects},
        {m.name: m.name for m in cat.morphisms},
    )


def constant_functor(src: FinCategory, tgt: FinCategory, obj) -> FunctorData:
    """Everything collapses onto one object and its identity."""
    if not tgt.has_object(obj):
        raise CheckError("UnknownObject", f"no object named {obj!r} in {tgt.name}")
    return FunctorData(
        src,
        tgt,
        COVARIANT,
        {a: obj for a in src.objects},
        {m.name: tgt.identity[obj] for m in src.morphisms},
    )


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    """g after f; variances multiply."""
    if f.target != g.source:
        raise CheckError("SourceTargetMismatch", "target of the inner functor is not the source of the outer")
    variance = COVARIANT if f.variance == g.variance else CONTRAVARIANT
    return FunctorData(
        f.source,
        g.target,
        variance,
        {a: g.object_map[f.object_map[a]] for a in f.source.objects},
        {m.name: g.morphism_map[f.morphism_map[m.name]] for m in f.source.morphisms},
    )


@dataclass(frozen=True)
class FunctorFlags:
    faithful: bool
    full: bool
    full_embedding: bool


def classify_functor(f: FunctorData) -> FunctorFlags:
    """Faithful/full by exhaustive hom-set comparison."""
    src, tgt = f.source, f.target
    faithful = True
    full = True
    for a in src.objects:
        for b in src.objects:
            hom = src.hom(a, b)
            images = [f.morphism_map[m] for m in hom]
            if len(set(images)) != len(images):
                faithful = False
            if f.is_covariant():
                there = tgt.hom(f.object_map[a], f.object_map[b])
            else:
                there = tgt.hom(f.object_map[b], f.object_map[a])
            if not set(there) <= set(images):
                full = False
    return FunctorFlags(faithful, full, faithful and full)


def _check_subcategory_of(cat: FinCategory, sub: FinCategory):
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
                "NotASubcategory", f"composition of {g} after {f} disagrees", witness=(g, f)
            )


def inclusion_functor(cat: FinCategory, sub: FinCategory) -> FunctorData:
    """The identity-on-elements functor from a subcategory."""
    _check_subcategory_of(cat, sub)
    return validate_functor(
        FunctorData(
            sub,
            cat,
            COVARIANT,
            {a: a for a in sub.objects},
            {m.name: m.name for m in sub.morphisms},
        )
    )


def diagonal_functor(cat: FinCategory) -> FunctorData:
    """A maps to (A, A) in the product of the category with itself."""
    prod = product_category(cat, cat)
    return validate_functor(
        FunctorData(
            cat,
            prod,
            COVARIANT,
            {a: pair_obj(a, a) for a in cat.objects},
            {m.name: pair_mor(cat, cat, m.name, m.name) for m in cat.morphisms},
        )
    )


def _skeleton_for(sizes, skeleton):
    need = max(sizes, default=0)
    if skeleton is None:
        return finset_skeleton(need)
    if not is_finset_skeleton(skeleton) or skeleton.meta["finset_max"] < need:
        raise CheckError("SizeBound", f"hom-set of size {need} does not fit the given skeleton")
    return skeleton


def hom_functor(cat: FinCategory, a, variance: str, skeleton: FinCategory | None = None) -> FunctorData:
    """Hom-functor at an object, valued in a finite-set skeleton.

    Object images are sets with a recorded enumeration: the hom-set in
    declaration order, so the induced functions are reproducible.  The
    enumeration is stored under ``meta["hom_enum"]``.
    """
    if not cat.has_object(a):
        raise CheckError("UnknownObject", f"no object named {a!r} in {cat.name}")
    if variance == COVARIANT:
        enum = {x: cat.hom(a, x) for x in cat.objects}
    else:
        enum = {x: cat.hom(x, a) for x in cat.objects}
    tgt = _skeleton_for([len(v) for v in enum.values()], skeleton)
    index = {x: {m: i for i, m in enumerate(enum[x])} for x in cat.objects}
    object_map = {x: finset_obj(len(enum[x])) for x in cat.objects}
    morphism_map = {}
    for m in cat.morphisms:
        if variance == COVARIANT:
            fn = FinFunction(
                len(enum[m.dom]),
                len(enum[m.cod]),
                tuple(index[m.cod][cat.compose(m.name, u)] for u in enum[m.dom]),
            )
        else:
            fn = FinFunction(
                len(enum[m.cod]),
                len(enum[m.dom]),
                tuple(index[m.dom][cat.compose(u, m.name)] for u in enum[m.cod]),
            )
        morphism_map[m.name] = finset_mor_name(fn)
    return validate_functor(
        FunctorData(cat, tgt, variance, object_map, morphism_map, meta={"hom_enum": enum})
    )


def hom_bifunctor(cat: FinCategory, skeleton: FinCategory | None = None) -> FunctorData:
    """Hom as a covariant functor on op(C) x C, valued in a skeleton."""
    opc = opposite_category(cat)
    src = product_category(opc, cat)
    enum = {}
    for a in cat.objects:
        for b in cat.objects:
            enum[pair_obj(a, b)] = cat.hom(a, b)
    tgt = _skeleton_for([len(v) for v in enum.values()], skeleton)
    index = {k: {m: i for i, m in enumerate(v)} for k, v in enum.items()}
    object_map = {k: finset_obj(len(v)) for k, v in enum.items()}

    def original(op_mor):
        return op_mor if opc.is_identity(op_mor) else op_mor[3:]

    morphism_map = {}
    for m1 in opc.morphisms:
        f = original(m1.name)  # f: m1.cod -> m1.dom in cat
        for m2 in cat.morphisms:
            name = pair_mor(opc, cat, m1.name, m2.name)
            src_key = pair_obj(m1.dom, m2.dom)
            dst_key = pair_obj(m1.cod, m2.cod)
            fn = FinFunction(
                len(enum[src_key]),
                len(enum[dst_key]),
                tuple(
                    index[dst_key][cat.compose(m2.name, cat.compose(u, f))]
                    for u in enum[src_key]
                ),
            )
            morphism_map[name] = finset_mor_name(fn)
    return validate_functor(
        FunctorData(src, tgt, COVARIANT, object_map, morphism_map, meta={"hom_enum": enum})
    )


def product_of_functions(k: FinFunction, l: FinFunction) -> FinFunction:
    """Componentwise action on the row-major encoded product of domains."""
    mapping = []
    for x in range(k.dom_size):
        for y in range(l.dom_size):
            mapping.append(k(x) * l.cod_size + l(y))
    return FinFunction(k.dom_size * l.dom_size, k.cod_size * l.cod_size, tuple(mapping))


@dataclass
class MonoidalTensor:
    """A tensor-product functor out of base x base together with its unit.

    On bounded skeletons the tensor lands in a skeleton large enough to hold
    all pairwise products of base sizes; a fully tensor-closed bounded
    skeleton only exists for sizes {0, 1}.
    """

    tensor: FunctorData
    unit: str
    base: FinCategory


def product_tensor(base_size: int) -> MonoidalTensor:
    """Cartesian product as a tensor on the finite-set skeleton.

    The target skeleton must hold sizes up to base_size squared, so the
    usual skeleton limit caps the base at 2.
    """
    base = finset_skeleton(base_size)
    tgt = finset_skeleton(base_size * base_size)
    src = product_category(base, base)
    fns = base.meta["fn"]
    object_map = {}
    for m in range(base_size + 1):
        for n in range(base_size + 1):
            object_map[pair_obj(finset_obj(m), finset_obj(n))] = finset_obj(m * n)
    morphism_map = {}
    for m1 in base.morphisms:
        for m2 in base.morphisms:
            name = pair_mor(base, base, m1.name, m2.name)
            morphism_map[name] = finset_mor_name(
                product_of_functions(fns[m1.name], fns[m2.name])
            )
    tensor = validate_functor(FunctorData(src, tgt, COVARIANT, object_map, morphism_map))
    return MonoidalTensor(tensor, finset_obj(1), base)


def check_bifunctoriality(t: MonoidalTensor, f, g) -> CommutativityVerdict:
    """Build the order-of-application square for f tensor g and chase it."""
    base = t.base
    mf, mg = base.mor(f), base.mor(g)
    a1, b1, a2, b2 = mf.dom, mf.cod, mg.dom, mg.cod
    ten = t.tensor

    def ob(x, y):
        return ten.on_obj(pair_obj(x, y))

    def mor(x, y):
        return ten.on_mor(pair_mor(base, base, x, y))

    nodes = {
        "aa": ob(a1, a2),
        "ba": ob(b1, a2),
        "ab": ob(a1, b2),
        "bb": ob(b1, b2),
    }
    edges = [
        ("aa", "ba", mor(f, base.identity[a2])),
        ("ba", "bb", mor(base.identity[b1], g)),
        ("aa", "ab", mor(base.identity[a1], g)),
        ("ab", "bb", mor(f, base.identity[b2])),
    ]
    return is_commutative(build_diagram(ten.target, nodes, edges))


def image_diagram(f: FunctorData, d: Diagram) -> Diagram:
    """Apply a functor to a diagram; contravariant functors reverse edges."""
    nodes = {n: f.object_map[obj] for n, obj in d.nodes.items()}
    if f.is_covariant():
        edges = [(s, t, f.morphism_map[m]) for s, t, m in d.edges]
    else:
        edges = [(t, s, f.morphism_map[m]) for s, t, m in d.edges]
    return build_diagram(f.target, nodes, edges)


def lift_functor(f: FunctorData, new_target: FinCategory) -> FunctorData:
    """Re-target a skeleton-valued functor into a larger skeleton.

    Object and morphism names of a smaller skeleton are stable under
    enlargement, so the maps carry over verbatim.
    """
    lifted = FunctorData(
        f.source, new_target, f.variance, dict(f.object_map), dict(f.morphism_map), meta=f.meta
    )
    return validate_functor(lifted)
