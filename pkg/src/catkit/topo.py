"""Finite topological spaces and simplicial complexes.

Spaces are point sets with an explicit family of opens; continuity is the
preimage test and components come from minimal open neighborhoods, which for
finite spaces agree with path components.  Complexes carry integer boundary
matrices whose Smith normal form yields homology with torsion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (
    FinCategory,
    FinFunction,
    RawCategory,
    finset_mor_name,
    finset_obj,
    finset_skeleton,
    identity_name,
    validate_category,
)
from .errors import CheckError
from .functor import COVARIANT, FunctorData, validate_functor
from .partition import ComponentPartition, UnionFind, partition_from_unionfind


@dataclass(frozen=True)
class FinTopSpace:
    name: str
    points: tuple
    opens: tuple  # frozensets, sorted by (size, point indices)

    def index(self, p):
        return self.points.index(p)


def validate_space(points, family, name="X") -> FinTopSpace:
    """Check the open-set axioms; for a finite family closure under pairwise
    unions and intersections is equivalent to closure under arbitrary ones."""
    points = tuple(points)
    if len(set(points)) != len(points):
        raise CheckError("DuplicateId", "duplicate points")
    pset = set(points)
    opens = set()
    for u in family:
        u = frozenset(u)
        if not u <= pset:
            raise CheckError("UnknownObject", f"open set {sorted(u)} mentions unknown points")
        opens.add(u)
    if frozenset() not in opens or frozenset(pset) not in opens:
        raise CheckError("MissingTopOrBottom", "the empty set and the full set must be open")
    for u, v in itertools.combinations(sorted(opens, key=sorted), 2):
        if u | v not in opens:
            raise CheckError(
                "MissingUnion", f"union of {sorted(u)} and {sorted(v)} is not open", witness=(u, v)
            )
        if u & v not in opens:
            raise CheckError(
                "MissingIntersection",
                f"intersection of {sorted(u)} and {sorted(v)} is not open",
                witness=(u, v),
            )
    order = {p: i for i, p in enumerate(points)}
    canon = sorted(opens, key=lambda u: (len(u), sorted(order[p] for p in u)))
    return FinTopSpace(name, points, tuple(canon))


def _check_point_map(f, x: FinTopSpace, y: FinTopSpace):
    for p in x.points:
        if p not in f:
            raise CheckError("NotAFunction", f"map undefined at {p!r}")
        if f[p] not in set(y.points):
            raise CheckError("NotAFunction", f"map sends {p!r} outside the codomain")


def is_continuous(f, x: FinTopSpace, y: FinTopSpace) -> bool:
    """Preimage of every open is open."""
    _check_point_map(f, x, y)
    opens = set(x.opens)
    for v in y.opens:
        if frozenset(p for p in x.points if f[p] in v) not in opens:
            return False
    return True


def is_homeomorphism(f, x: FinTopSpace, y: FinTopSpace) -> bool:
    _check_point_map(f, x, y)
    if len(set(f.values())) != len(x.points) or len(x.points) != len(y.points):
        return False
    inv = {v: k for k, v in f.items()}
    return is_continuous(f, x, y) and is_continuous(inv, y, x)


@dataclass(frozen=True)
class GlueResult:
    glued: dict
    continuous: bool
    piece_continuity: tuple


def subspace(x: FinTopSpace, subset, name=None) -> FinTopSpace:
    """Relative topology on a subset of the points."""
    subset = frozenset(subset)
    opens = {u & subset for u in x.opens}
    pts = tuple(p for p in x.points if p in subset)
    return validate_space(pts, opens, name or f"{x.name}|{len(pts)}")


def glue_check(x: FinTopSpace, y: FinTopSpace, cover, pieces) -> GlueResult:
    """Glue piecewise maps on a closed cover after verifying they agree on
    all overlaps; confirms that the glued map is continuous exactly when
    every piece is continuous on its subspace."""
    cover = [frozenset(c) for c in cover]
    opens = set(x.opens)
    pset = set(x.points)
    covered = set()
    for c in cover:
        if frozenset(pset - c) not in opens:
            raise CheckError("NotClosedCover", f"{sorted(c)} is not closed", witness=c)
        covered |= c
    if covered != pset:
        raise CheckError("NotClosedCover", "cover does not exhaust the space")
    if len(pieces) != len(cover):
        raise CheckError("NotAFunction", "one piece per cover member required")
    for c, f in zip(cover, pieces):
        for p in c:
            if p not in f:
                raise CheckError("NotAFunction", f"piece undefined at {p!r}")
    for (i, ci), (j, cj) in itertools.combinations(enumerate(cover), 2):
        for p in sorted(ci & cj, key=x.index):
            if pieces[i][p] != pieces[j][p]:
                raise CheckError(
                    "OverlapDisagreement",
                    f"pieces {i} and {j} disagree at {p!r}",
                    witness=p,
                )
    glued = {}
    for c, f in zip(cover, pieces):
        for p in c:
            glued[p] = f[p]
    piece_cont = tuple(
        is_continuous({p: f[p] for p in c}, subspace(x, c), y) for c, f in zip(cover, pieces)
    )
    cont = is_continuous(glued, x, y)
    if cont != all(piece_cont):
        raise CheckError(
            "Mismatch",
            "pasting principle violated: glued continuity must match piecewise continuity",
        )
    return GlueResult(glued, cont, piece_cont)


def is_connected(x: FinTopSpace) -> bool:
    """No decomposition into two disjoint nonempty opens."""
    pset = frozenset(x.points)
    opens = set(x.opens)
    for u in x.opens:
        if u and u != pset and frozenset(pset - u) in opens:
            return False
    return True


def minimal_neighborhood(x: FinTopSpace, p) -> frozenset:
    """Intersection of all opens containing the point; open by finiteness."""
    out = frozenset(x.points)
    for u in x.opens:
        if p in u:
            out &= u
    return out


def pi0_top(x: FinTopSpace) -> ComponentPartition:
    """Components from minimal-neighborhood adjacency; for finite spaces
    this partition is both the connected and the path components."""
    uf = UnionFind(x.points)
    mins = {p: minimal_neighborhood(x, p) for p in x.points}
    for p in x.points:
        for q in x.points:
            if q in mins[p] or p in mins[q]:
                uf.union(p, q)
    return partition_from_unionfind(uf)


def pi0_induced(f, x: FinTopSpace, y: FinTopSpace):
    """Block map induced on components by a continuous map."""
    if not is_continuous(f, x, y):
        raise CheckError("NotContinuous", "the map is not continuous")
    px, py = pi0_top(x), pi0_top(y)
    out = {}
    for i, block in enumerate(px.blocks):
        images = {py.block_of(f[p]) for p in block}
        if len(images) != 1:
            raise CheckError("Mismatch", "image of a component is not contained in one component")
        out[i] = images.pop()
    return out


def fintop_category(spaces, limit: int = 50_000):
    """The category of the given spaces and all continuous maps, plus the
    forgetful functor onto underlying sets.

    Morphism names encode domain, codomain, and the row-major rank of the
    point map, so reports are reproducible."""
    by_name = {}
    for s in spaces:
        if s.name in by_name:
            raise CheckError("DuplicateId", f"two spaces named {s.name!r}")
        by_name[s.name] = s
    names = [s.name for s in spaces]
    mors = []
    maps = {}
    comps = []
    for xn in names:
        x = by_name[xn]
        for yn in names:
            y = by_name[yn]
            if len(y.points) ** len(x.points) > limit:
                raise CheckError("SizeBound", f"too many candidate maps {xn} -> {yn}")
            for combo in itertools.product(range(len(y.points)), repeat=len(x.points)):
                f = {p: y.points[combo[i]] for i, p in enumerate(x.points)}
                if not is_continuous(f, x, y):
                    continue
                if xn == yn and all(k == v for k, v in f.items()):
                    maps[identity_name(xn)] = f
                    continue
                name = f"c:{xn}:{yn}x{FinFunction(len(x.points), len(y.points), combo).rank()}"
                maps[name] = f
                mors.append((name, xn, yn))
    def map_name(f, xn, yn):
        x, y = by_name[xn], by_name[yn]
        if xn == yn and all(k == v for k, v in f.items()):
            return identity_name(xn)
        combo = tuple(y.index(f[p]) for p in x.points)
        return f"c:{xn}:{yn}x{FinFunction(len(x.points), len(y.points), combo).rank()}"

    for g, gx, gy in [(n, s, d) for n, s, d in mors]:
        for f, fx, fy in [(n, s, d) for n, s, d in mors]:
            if fy != gx:
                continue
            comp = {p: maps[g][maps[f][p]] for p in by_name[fx].points}
            comps.append((g, f, map_name(comp, fx, gy)))
    cat = validate_category(RawCategory("FinTop", names, mors, comps))
    cat.meta["space"] = by_name
    cat.meta["map"] = maps
    biggest = max((len(s.points) for s in spaces), default=0)
    sk = finset_skeleton(biggest)
    obj_map = {n: finset_obj(len(by_name[n].points)) for n in names}
    mor_map = {}
    for m in cat.morphisms:
        x, y = by_name[m.dom], by_name[m.cod]
        f = maps[m.name]
        fn = FinFunction(len(x.points), len(y.points), tuple(y.index(f[p]) for p in x.points))
        mor_map[m.name] = finset_mor_name(fn)
    forgetful = validate_functor(FunctorData(cat, sk, COVARIANT, obj_map, mor_map))
    return cat, forgetful


# ---------------------------------------------------------------------------
# Simplicial complexes and homology


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    simplices: frozenset  # tuples of vertices, ascending in vertex order

    @property
    def dimension(self):
        return max((len(s) for s in self.simplices), default=0) - 1

    def of_dim(self, n):
        """n-simplices in lexicographic vertex-index order."""
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted(
            (s for s in self.simplices if len(s) == n + 1),
            key=lambda s: tuple(order[v] for v in s),
        )

    def counts(self):
        out = [0] * (self.dimension + 1)
        for s in self.simplices:
            out[len(s) - 1] += 1
        return out


def validate_complex(simplices, vertices=None) -> SimplicialComplex:
    """Close the given simplices under faces; vertices default to first
    appearance order."""
    if vertices is None:
        vertices = []
        seen = set()
        for s in simplices:
            for v in s:
                if v not in seen:
                    seen.add(v)
                    vertices.append(v)
    vertices = tuple(vertices)
    order = {v: i for i, v in enumerate(vertices)}
    closed = set()
    for s in simplices:
        s = tuple(s)
        if len(set(s)) != len(s):
            raise CheckError("DuplicateVertexInSimplex", f"simplex {s} repeats a vertex", witness=s)
        for v in s:
            if v not in order:
                raise CheckError("UnknownObject", f"simplex {s} uses undeclared vertex {v!r}")
        canon = tuple(sorted(s, key=order.get))
        for k in range(1, len(canon) + 1):
            closed.update(itertools.combinations(canon, k))
    return SimplicialComplex(vertices, frozenset(closed))


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix; arithmetic is exact (Python integers)."""

    rows: int
    cols: int
    entries: tuple  # row tuples

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                row.append(sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)))
            out.append(tuple(row))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def is_zero(self):
        return all(v == 0 for row in self.entries for v in row)


def boundary_matrix(k: SimplicialComplex, n: int) -> IntMatrix:
    """Row per (n-1)-simplex, column per n-simplex; deleting the i-th vertex
    of the ascending tuple contributes (-1)^i."""
    if n < 1 or n > k.dimension:
        raise CheckError("DimensionOutOfRange", f"no boundary operator in dimension {n}")
    lower = k.of_dim(n - 1)
    upper = k.of_dim(n)
    row_of = {s: i for i, s in enumerate(lower)}
    entries = [[0] * len(upper) for _ in lower]
    for j, s in enumerate(upper):
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            entries[row_of[face]][j] = (-1) ** i
    return IntMatrix(len(lower), len(upper), tuple(tuple(r) for r in entries))


@dataclass(frozen=True)
class SNFResult:
    diagonal: IntMatrix
    rank: int
    factors: tuple  # nonzero diagonal entries, each dividing the next


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Diagonalize by integer row/column operations, smallest pivot first.

    The pivot choice limits coefficient growth; arithmetic is arbitrary
    precision so it only affects speed.  Divisibility d1 | d2 | ... is
    enforced by folding offending entries into the pivot block.
    """
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            moved = False
            for i in range(rows):
                if i != t and a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        moved = True
            for j in range(cols):
                if j != t and a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        moved = True
            if not moved:
                break
        fold = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t] != 0:
                    fold = i
                    break
            if fold is not None:
                break
        if fold is not None:
            for j in range(cols):
                a[t][j] += a[fold][j]
            continue
        t += 1
    diag = []
    for i in range(min(rows, cols)):
        v = abs(a[i][i])
        diag.append(v)
    entries = tuple(
        tuple(diag[i] if i == j and i < len(diag) else 0 for j in range(cols)) for i in range(rows)
    )
    factors = tuple(v for v in diag if v != 0)
    return SNFResult(IntMatrix(rows, cols, entries), len(factors), factors)


@dataclass(frozen=True)
class HomologyResult:
    dimension: int
    betti: int
    torsion: tuple  # invariant factors > 1, each dividing the next


def homology(k: SimplicialComplex, n: int) -> HomologyResult:
    """Kernel of the n-boundary modulo the image of the (n+1)-boundary,
    computed through Smith normal form ranks and invariant factors."""
    if n < 0 or n > k.dimension:
        raise CheckError("DimensionOutOfRange", f"no homology in dimension {n}")
    chains = len(k.of_dim(n))
    rank_n = 0 if n == 0 else smith_normal_form(boundary_matrix(k, n)).rank
    if n == k.dimension:
        rank_up, factors = 0, ()
    else:
        snf = smith_normal_form(boundary_matrix(k, n + 1))
        rank_up, factors = snf.rank, snf.factors
    return HomologyResult(
        dimension=n,
        betti=chains - rank_n - rank_up,
        torsion=tuple(v for v in factors if v > 1),
    )


def euler_characteristic(k: SimplicialComplex) -> int:
    return sum((-1) ** i * c for i, c in enumerate(k.counts()))


def polyhedron_check(k: SimplicialComplex) -> bool:
    """f + v = e + 2 for a 2-dimensional complex's face counts."""
    if k.dimension != 2:
        raise CheckError("DimensionOutOfRange", "polyhedron check needs a 2-dimensional complex")
    v, e, f = k.counts()
    return f + v == e + 2


def pi0_complex(k: SimplicialComplex) -> ComponentPartition:
    uf = UnionFind(k.vertices)
    for u, v in k.of_dim(1):
        uf.union(u, v)
    return partition_from_unionfind(uf)


@dataclass(frozen=True)
class PresentedGroup:
    """Generators are undirected non-tree edges (as ordered vertex pairs);
    relator words are tuples of signed 1-based generator indices."""

    generators: tuple
    relators: tuple


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def pi1_presentation(k: SimplicialComplex, base) -> PresentedGroup:
    """Edge-path presentation over a spanning tree of the base component:
    one generator per non-tree edge, one relator per triangle, rewritten
    through the tree."""
    if base not in k.vertices:
        raise CheckError("BaseVertexMissing", f"vertex {base!r} is not in the complex")
    comp = pi0_complex(k)
    block = set(comp.blocks[comp.block_of(base)])
    adj = {}
    for u, v in k.of_dim(1):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    tree = set()
    seen = {base}
    queue = [base]
    while queue:
        u = queue.pop(0)
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                tree.add(tuple(sorted((u, v), key=k.vertices.index)))
                queue.append(v)
    generators = tuple(
        e for e in k.of_dim(1) if e not in tree and e[0] in block and e[1] in block
    )
    gen_index = {e: i + 1 for i, e in enumerate(generators)}
    order = {v: i for i, v in enumerate(k.vertices)}

    def letter(u, v):
        e = (u, v) if order[u] < order[v] else (v, u)
        if e in tree:
            return None
        idx = gen_index[e]
        return idx if e == (u, v) else -idx

    relators = []
    for a, b, c in k.of_dim(2):
        if a not in block:
            continue
        word = [letter(a, b), letter(b, c), l_inv(letter(a, c))]
        relators.append(tuple(x for x in word if x is not None))
    return PresentedGroup(generators, tuple(relators))


def l_inv(x):
    return None if x is None else -x


def presentation_certified_trivial(p: PresentedGroup) -> bool:
    """Kill generators forced trivial by length-one relators until none are
    left or no progress is possible; a certificate, not a decision
    procedure."""
    alive = set(range(1, len(p.generators) + 1))
    relators = [free_reduce(w) for w in p.relators]
    changed = True
    while changed:
        changed = False
        for w in relators:
            if len(w) == 1 and abs(w[0]) in alive:
                dead = abs(w[0])
                alive.discard(dead)
                relators = [
                    free_reduce(tuple(x for x in v if abs(x) != dead)) for v in relators
                ]
                changed = True
                break
    return not alive


@dataclass(frozen=True)
class GroupoidResult:
    category: FinCategory | None
    reason: str | None


def fundamental_groupoid(k: SimplicialComplex) -> GroupoidResult:
    """The pair groupoid on each component when every component is simply
    connected; otherwise absent, since path classes would be infinite."""
    comp = pi0_complex(k)
    for block in comp.blocks:
        pres = pi1_presentation(k, block[0])
        if not presentation_certified_trivial(pres):
            return GroupoidResult(
                None,
                f"component of {block[0]!r} has fundamental group presented on "
                f"{len(pres.generators)} generators that do not all cancel",
            )
    block_of = {v: i for i, b in enumerate(comp.blocks) for v in b}
    mors = []
    for u in k.vertices:
        for v in k.vertices:
            if u != v and block_of[u] == block_of[v]:
                mors.append((f"p:{u}:{v}", u, v))
    comps = []
    for u in k.vertices:
        for v in k.vertices:
            for w in k.vertices:
                if block_of[u] != block_of[v] or block_of[v] != block_of[w]:
                    continue
                if u == v or v == w:
                    continue
                h = identity_name(u) if u == w else f"p:{u}:{w}"
                comps.append((f"p:{v}:{w}", f"p:{u}:{v}", h))
    cat = validate_category(RawCategory("Pi1", list(k.vertices), mors, comps))
    return GroupoidResult(cat, None)
