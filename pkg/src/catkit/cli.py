"""Command-line surface: parse input files, dispatch the checkers, and
render deterministic text or JSON reports.

Exit codes: 0 all checks passed, 1 a check failed, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field

from . import algebra, topo
from .core import (
    DEFAULT_FINSET_LIMIT,
    FinCategory,
    MultiGraph,
    RawCategory,
    classify_morphism,
    finset_skeleton,
    free_category,
    opposite_category,
    product_category,
    validate_category,
)
from .diagram import build_diagram, is_commutative
from .errors import CheckError
from .functor import COVARIANT, CONTRAVARIANT, FunctorData, classify_functor, validate_functor
from .nattrans import NatTransData, check_natural, coend_finset, end_finset
from .parser import (
    ComplexDecl,
    DiagramDecl,
    Document,
    FunctorDecl,
    GroupDecl,
    MapDecl,
    NatDecl,
    ParseError,
    SpaceDecl,
    parse_document,
)
from .universal import adjunction_from_unit, check_adjunction, find_adjoint, search_colimit, search_limit

_FINSET_RE = re.compile(r"^finset([0-9]+)$")


@dataclass
class Finding:
    kind: str
    message: str
    witness: str = ""


@dataclass
class Report:
    status: str  # "ok" | "fail"
    subject: str
    findings: list = field(default_factory=list)
    summary: str = ""


class CliFailure(Exception):
    """Carries a finished failure report and the exit code."""

    def __init__(self, report: Report, code: int = 1):
        super().__init__(report.subject)
        self.report = report
        self.code = code


# environment ----------------------------------------------------------------


class Env:
    """All blocks parsed from the input files, resolved on demand."""

    def __init__(self):
        self.docs = []
        self.raw_categories = {}
        self.functor_decls = {}
        self.nat_decls = {}
        self.diagram_decls = {}
        self.complex_decls = {}
        self.space_decls = {}
        self.group_decls = {}
        self.map_decls = {}
        self._categories = {}
        self._functors = {}

    def load(self, doc: Document):
        self.docs.append(doc)
        table = {
            RawCategory: self.raw_categories,
            FunctorDecl: self.functor_decls,
            NatDecl: self.nat_decls,
            DiagramDecl: self.diagram_decls,
            ComplexDecl: self.complex_decls,
            SpaceDecl: self.space_decls,
            GroupDecl: self.group_decls,
            MapDecl: self.map_decls,
        }
        for item in doc.items:
            table[type(item)][item.name] = item

    def category(self, expr) -> FinCategory:
        if isinstance(expr, str):
            expr = ("name", expr)
        if expr[0] == "name":
            name = expr[1]
            if name in self._categories:
                return self._categories[name]
            if name in self.raw_categories:
                cat = validate_category(self.raw_categories[name])
            else:
                m = _FINSET_RE.match(name)
                if m and int(m.group(1)) <= DEFAULT_FINSET_LIMIT:
                    cat = finset_skeleton(int(m.group(1)))
                else:
                    raise CheckError("UnknownReference", f"no category named {name!r}")
            self._categories[name] = cat
            return cat
        if expr[0] == "op":
            return opposite_category(self.category(expr[1]))
        if expr[0] == "prod":
            return product_category(self.category(expr[1]), self.category(expr[2]))
        raise CheckError("UnknownReference", f"bad category expression {expr!r}")

    def functor(self, name) -> FunctorData:
        if name in self._functors:
            return self._functors[name]
        if name not in self.functor_decls:
            raise CheckError("UnknownReference", f"no functor named {name!r}")
        decl = self.functor_decls[name]
        src = self.category(decl.source)
        tgt = self.category(decl.target)
        object_map = dict(decl.object_map)
        morphism_map = dict(decl.morphism_map)
        for o in src.objects:
            if o not in object_map:
                raise CheckError("NotTotal", f"functor {name}: object {o!r} is not mapped")
        for o in src.objects:
            img = object_map[o]
            if not tgt.has_object(img):
                raise CheckError("UnknownReference", f"functor {name}: unknown object {img!r}")
            morphism_map.setdefault(src.identity[o], tgt.identity[img])
        f = FunctorData(
            src, tgt, CONTRAVARIANT if decl.contravariant else COVARIANT, object_map, morphism_map
        )
        validate_functor(f)
        self._functors[name] = f
        return f

    def nat(self, name) -> NatTransData:
        if name not in self.nat_decls:
            raise CheckError("UnknownReference", f"no transformation named {name!r}")
        decl = self.nat_decls[name]
        return NatTransData(
            self.functor(decl.source_functor),
            self.functor(decl.target_functor),
            dict(decl.components),
        )

    def space(self, name) -> topo.FinTopSpace:
        if name not in self.space_decls:
            raise CheckError("UnknownReference", f"no space named {name!r}")
        d = self.space_decls[name]
        return topo.validate_space(d.points, [frozenset(u) for u in d.opens], d.name)

    def complex(self, name) -> topo.SimplicialComplex:
        if name not in self.complex_decls:
            raise CheckError("UnknownReference", f"no complex named {name!r}")
        return topo.validate_complex(self.complex_decls[name].simplices)


def _load_files(paths) -> Env:
    env = Env()
    for path in paths:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise CliFailure(
                Report("fail", path, [Finding("IoError", str(err))]), code=2
            ) from None
        env.load(parse_document(text, path))
    return env


def _witness_str(w) -> str:
    if w is None:
        return ""
    if isinstance(w, str):
        return w
    if isinstance(w, (tuple, list)):
        return "(" + ", ".join(_witness_str(x) for x in w) + ")"
    if isinstance(w, frozenset):
        return "{" + ", ".join(sorted(map(str, w))) + "}"
    return str(w)


def _finding_of(err: CheckError) -> Finding:
    return Finding(err.kind, err.message, _witness_str(err.witness))


# command handlers ------------------------------------------------------------


def _cmd_check(args):
    env = _load_files(args.files)
    kind = args.kind
    reports = []
    if kind == "category":
        for name in env.raw_categories:
            try:
                cat = env.category(name)
            except CheckError as err:
                reports.append(Report("fail", f"category {name}", [_finding_of(err)]))
                continue
            reports.append(
                Report(
                    "ok",
                    f"category {name}",
                    summary=f"{len(cat.objects)} objects, {len(cat.morphisms)} morphisms",
                )
            )
    elif kind == "functor":
        for name in env.functor_decls:
            try:
                f = env.functor(name)
            except CheckError as err:
                reports.append(Report("fail", f"functor {name}", [_finding_of(err)]))
                continue
            flags = classify_functor(f)
            reports.append(
                Report(
                    "ok",
                    f"functor {name}",
                    summary=f"{f.variance}, faithful={flags.faithful}, full={flags.full}",
                )
            )
    elif kind == "nat":
        for name in env.nat_decls:
            try:
                t = env.nat(name)
                verdict = check_natural(t)
            except CheckError as err:
                reports.append(Report("fail", f"nat {name}", [_finding_of(err)]))
                continue
            if verdict.natural:
                reports.append(Report("ok", f"nat {name}", summary="natural"))
            else:
                reports.append(
                    Report(
                        "fail",
                        f"nat {name}",
                        [
                            Finding(
                                "NaturalitySquare",
                                f"naturality square fails at {verdict.witness}",
                                verdict.witness,
                            )
                        ],
                    )
                )
    elif kind == "group":
        for name in env.group_decls:
            d = env.group_decls[name]
            try:
                g = algebra.check_group(
                    d.elements, d.rows, identity=d.elements[0] if d.elements else None
                )
            except CheckError as err:
                reports.append(Report("fail", f"group {name}", [_finding_of(err)]))
                continue
            reports.append(
                Report(
                    "ok",
                    f"group {name}",
                    summary=f"order {len(g)}, abelian={algebra.is_abelian(g)}",
                )
            )
    elif kind == "space":
        for name in env.space_decls:
            try:
                x = env.space(name)
            except CheckError as err:
                reports.append(Report("fail", f"space {name}", [_finding_of(err)]))
                continue
            reports.append(
                Report(
                    "ok",
                    f"space {name}",
                    summary=(
                        f"{len(x.points)} points, {len(x.opens)} opens, "
                        f"connected={topo.is_connected(x)}"
                    ),
                )
            )
    if not reports:
        raise CliFailure(
            Report("fail", f"check {kind}", [Finding("NoInput", f"no {kind} blocks found")]),
            code=2,
        )
    return reports


def _path_str(path, composite):
    return ";".join(path) if path else composite


def _cmd_diagram_check(args):
    env = _load_files(args.files)
    reports = []
    for name, decl in env.diagram_decls.items():
        cat = env.category(decl.category)
        d = build_diagram(cat, dict(decl.nodes), decl.edges)
        verdict = is_commutative(d)
        if verdict.commutative:
            reports.append(Report("ok", f"diagram {name}", summary="commutative"))
        else:
            n1, n2, m1, m2 = verdict.witness
            p1, p2 = verdict.witness_paths
            reports.append(
                Report(
                    "fail",
                    f"diagram {name}",
                    [
                        Finding(
                            "NotCommutative",
                            f"paths ({_path_str(p1, m1)}) and ({_path_str(p2, m2)}) "
                            f"from {n1} to {n2} differ",
                            f"({m1}, {m2})",
                        )
                    ],
                )
            )
    if not reports:
        raise CliFailure(
            Report("fail", "diagram check", [Finding("NoInput", "no diagram blocks found")]),
            code=2,
        )
    return reports


def _diagram_as_functor(env: Env, decl: DiagramDecl) -> FunctorData:
    """Interpret a diagram as a functor from the free category on its shape
    graph; cyclic shapes are rejected since the free category is infinite."""
    cat = env.category(decl.category)
    nodes = dict(decl.nodes)
    edge_names = [f"e{i}" for i in range(len(decl.edges))]
    shape = free_category(
        MultiGraph(list(nodes), [(edge_names[i], s, d) for i, (s, d, _) in enumerate(decl.edges)])
    )
    label = {edge_names[i]: m for i, (_, _, m) in enumerate(decl.edges)}
    object_map = dict(nodes)
    morphism_map = {}
    for m in shape.morphisms:
        if shape.is_identity(m.name):
            morphism_map[m.name] = cat.identity[nodes[m.dom]]
            continue
        parts = m.name.split(";")
        acc = label[parts[0]]
        for p in parts[1:]:
            acc = cat.compose(label[p], acc)
        morphism_map[m.name] = acc
    return validate_functor(FunctorData(shape, cat, COVARIANT, object_map, morphism_map))


def _legs_str(cone):
    objs = cone.functor.source.objects
    return ", ".join(f"{x}={cone.legs[x]}" for x in objs)


def _cmd_limit(args, direction):
    env = _load_files(args.files)
    reports = []
    for name, decl in env.diagram_decls.items():
        dia = _diagram_as_functor(env, decl)
        cone = search_limit(dia) if direction == "limit" else search_colimit(dia)
        if cone is None:
            reports.append(
                Report(
                    "fail",
                    f"{direction} {name}",
                    [Finding("Absent", f"no {direction} exists in {dia.target.name}")],
                )
            )
        else:
            reports.append(
                Report(
                    "ok",
                    f"{direction} {name}",
                    summary=f"apex {cone.apex}; {_legs_str(cone)}",
                )
            )
    if not reports:
        raise CliFailure(
            Report("fail", direction, [Finding("NoInput", "no diagram blocks found")]), code=2
        )
    return reports


def _cmd_adjoint(args):
    env = _load_files(args.files)
    if args.action == "verify":
        f = env.functor(args.left)
        g = env.functor(args.right)
        unit = env.nat(args.unit)
        adj = adjunction_from_unit(f, g, unit)
        verdict = check_adjunction(adj, args.mode)
        subject = f"adjunction {args.left} -| {args.right}"
        if verdict.ok:
            return [Report("ok", subject, summary=f"verified ({args.mode})")]
        return [
            Report(
                "fail",
                subject,
                [Finding("AdjunctionFail", verdict.failure, _witness_str(verdict.witness))],
            )
        ]
    g = env.functor(args.functor)
    adj = find_adjoint(g, args.side)
    subject = f"{args.side} adjoint of {args.functor}"
    if adj is None:
        return [
            Report(
                "fail",
                subject,
                [Finding("Absent", "some comma category lacks a universal object")],
            )
        ]
    found = adj.F if args.side == "left" else adj.G
    objmap = ", ".join(f"{a}=>{found.object_map[a]}" for a in found.source.objects)
    return [Report("ok", subject, summary=objmap)]


def _cmd_end(args, which):
    env = _load_files(args.files)
    s = env.functor(args.functor)
    result = end_finset(s) if which == "end" else coend_finset(s)
    return [
        Report(
            "ok",
            f"{which} of {args.functor}",
            summary=f"object {result.object}, universal={result.universal}",
        )
    ]


def _cmd_homology(args):
    env = _load_files(args.files)
    reports = []
    for name in env.complex_decls:
        k = env.complex(name)
        h = topo.homology(k, args.dim)
        reports.append(
            Report(
                "ok",
                f"H_{args.dim}",
                summary=f"betti={h.betti} torsion={list(h.torsion)}",
            )
        )
    if not reports:
        raise CliFailure(
            Report("fail", "homology", [Finding("NoInput", "no complex blocks found")]), code=2
        )
    return reports


def _cmd_euler(args):
    env = _load_files(args.files)
    return [
        Report(
            "ok",
            f"euler {name}",
            summary=f"chi={topo.euler_characteristic(env.complex(name))}",
        )
        for name in env.complex_decls
    ]


def _cmd_pi0(args):
    env = _load_files(args.files)
    reports = []
    for name in env.complex_decls:
        part = topo.pi0_complex(env.complex(name))
        blocks = " ".join("{" + ",".join(map(str, b)) + "}" for b in part.blocks)
        reports.append(Report("ok", f"pi0 {name}", summary=f"{len(part)} components: {blocks}"))
    for name in env.space_decls:
        part = topo.pi0_top(env.space(name))
        blocks = " ".join("{" + ",".join(map(str, b)) + "}" for b in part.blocks)
        reports.append(Report("ok", f"pi0 {name}", summary=f"{len(part)} components: {blocks}"))
    if not reports:
        raise CliFailure(
            Report("fail", "pi0", [Finding("NoInput", "no complex or space blocks found")]), code=2
        )
    return reports


def _cmd_pi1(args):
    env = _load_files(args.files)
    reports = []
    for name in env.complex_decls:
        k = env.complex(name)
        base = args.base if args.base is not None else k.vertices[0]
        p = topo.pi1_presentation(k, base)
        trivial = topo.presentation_certified_trivial(p)
        gens = " ".join(f"{u}-{v}" for u, v in p.generators) or "-"
        reports.append(
            Report(
                "ok",
                f"pi1 {name}",
                summary=(
                    f"{len(p.generators)} generators ({gens}), {len(p.relators)} relators, "
                    f"trivialized={trivial}"
                ),
            )
        )
    if not reports:
        raise CliFailure(
            Report("fail", "pi1", [Finding("NoInput", "no complex blocks found")]), code=2
        )
    return reports


def _cmd_top_continuous(args):
    env = _load_files([args.space_x, args.space_y, args.map_file])
    if not env.map_decls:
        raise CliFailure(
            Report("fail", "top continuous", [Finding("NoInput", "no map block found")]), code=2
        )
    name, decl = next(iter(env.map_decls.items()))
    x = env.space(decl.source)
    y = env.space(decl.target)
    f = dict(decl.mapping)
    if topo.is_continuous(f, x, y):
        homeo = topo.is_homeomorphism(f, x, y)
        return [Report("ok", f"map {name}", summary=f"continuous, homeomorphism={homeo}")]
    return [
        Report(
            "fail",
            f"map {name}",
            [Finding("NotContinuous", f"{name}: some open set has a non-open preimage")],
        )
    ]


def _cmd_classify(args):
    env = _load_files(args.files)
    cat = env.category(next(iter(env.raw_categories))) if env.raw_categories else None
    if cat is None:
        raise CliFailure(
            Report("fail", "classify", [Finding("NoInput", "no category block found")]), code=2
        )
    flags = classify_morphism(cat, args.morphism)
    return [
        Report(
            "ok",
            f"morphism {args.morphism}",
            summary=(
                f"mono={flags.mono} epi={flags.epi} iso={flags.iso}"
                + (f" inverse={flags.inverse}" if flags.iso else "")
                + f" regular={flags.regular}"
            ),
        )
    ]


# rendering -------------------------------------------------------------------


def _render_text(reports, out):
    for r in reports:
        if r.status == "ok":
            line = f"OK {r.subject}"
            if r.summary:
                line += f": {r.summary}"
            print(line, file=out)
        else:
            for f in r.findings:
                print(f"FAIL: {f.message}", file=out)


def _render_json(reports, out):
    if len(reports) == 1:
        r = reports[0]
    else:
        r = Report(
            "ok" if all(x.status == "ok" for x in reports) else "fail",
            "; ".join(x.subject for x in reports),
            [f for x in reports for f in x.findings],
            "; ".join(x.summary for x in reports if x.summary),
        )
    payload = {
        "status": r.status,
        "subject": r.subject,
        "findings": [
            {"kind": f.kind, "message": f.message, "witness": f.witness} for f in r.findings
        ],
    }
    print(json.dumps(payload), file=out)


def _build_argparser():
    top = argparse.ArgumentParser(prog="catkit", description="finite category theory checker")
    top.add_argument("--format", choices=("text", "json"), default="text")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate blocks of one kind")
    p.add_argument("kind", choices=("category", "functor", "nat", "group", "space"))
    p.add_argument("files", nargs="+")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("diagram", help="diagram commands")
    dsub = p.add_subparsers(dest="action", required=True)
    d = dsub.add_parser("check")
    d.add_argument("files", nargs="+")
    d.set_defaults(handler=_cmd_diagram_check)

    for direction in ("limit", "colimit"):
        p = sub.add_parser(direction, help=f"search the {direction} of diagrams")
        p.add_argument("files", nargs="+")
        p.set_defaults(handler=lambda a, _d=direction: _cmd_limit(a, _d))

    p = sub.add_parser("adjoint", help="verify or search adjunctions")
    asub = p.add_subparsers(dest="action", required=True)
    a = asub.add_parser("verify")
    a.add_argument("files", nargs="+")
    a.add_argument("--left", required=True, help="left adjoint functor name")
    a.add_argument("--right", required=True, help="right adjoint functor name")
    a.add_argument("--unit", required=True, help="unit transformation name")
    a.add_argument("--mode", choices=("hom_bijection", "unit_counit", "both"), default="both")
    a.set_defaults(handler=_cmd_adjoint)
    a = asub.add_parser("find")
    a.add_argument("files", nargs="+")
    a.add_argument("--functor", required=True)
    a.add_argument("--side", choices=("left", "right"), default="left")
    a.set_defaults(handler=_cmd_adjoint)

    for which in ("end", "coend"):
        p = sub.add_parser(which, help=f"compute the {which} of a bifunctor")
        p.add_argument("files", nargs="+")
        p.add_argument("--functor", required=True)
        p.set_defaults(handler=lambda a, _w=which: _cmd_end(a, _w))

    p = sub.add_parser("homology")
    p.add_argument("files", nargs="+")
    p.add_argument("--dim", type=int, required=True)
    p.set_defaults(handler=_cmd_homology)

    p = sub.add_parser("euler")
    p.add_argument("files", nargs="+")
    p.set_defaults(handler=_cmd_euler)

    p = sub.add_parser("pi0")
    p.add_argument("files", nargs="+")
    p.set_defaults(handler=_cmd_pi0)

    p = sub.add_parser("pi1")
    p.add_argument("files", nargs="+")
    p.add_argument("--base", default=None)
    p.set_defaults(handler=_cmd_pi1)

    p = sub.add_parser("top")
    tsub = p.add_subparsers(dest="action", required=True)
    t = tsub.add_parser("continuous")
    t.add_argument("space_x")
    t.add_argument("space_y")
    t.add_argument("map_file")
    t.set_defaults(handler=_cmd_top_continuous)

    p = sub.add_parser("classify")
    csub = p.add_subparsers(dest="action", required=True)
    c = csub.add_parser("morphism")
    c.add_argument("files", nargs="+")
    c.add_argument("morphism")
    c.set_defaults(handler=_cmd_classify)

    return top


def run(argv, out=None) -> int:
    """Execute one command line; reports go to ``out`` (default stdout)."""
    out = out or sys.stdout
    parser = _build_argparser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0) and 2
    render = _render_json if args.format == "json" else _render_text
    try:
        reports = args.handler(args)
    except ParseError as err:
        render(
            [
                Report(
                    "fail",
                    str(err.span),
                    [Finding(f"ParseError:{err.kind}", str(err), "")],
                )
            ],
            out,
        )
        return 2
    except CliFailure as err:
        render([err.report], out)
        return err.code
    except CheckError as err:
        render([Report("fail", "check", [_finding_of(err)])], out)
        return 1
    render(reports, out)
    return 0 if all(r.status == "ok" for r in reports) else 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
