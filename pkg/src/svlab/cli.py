"""``svlab`` command line.

Every numeric result is printed as ``key=p/q``.  Exit codes: 0 success,
2 domain error, 3 parse or usage error, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from svlab import dcx
from svlab.chains import RationalChain, boundary, homology_class_decompose, l1_norm
from svlab.covering import EdgeCocycle, auto_cocycle, build_cyclic_cover, surface_genus, transfer
from svlab.dcx import DcxDocument, fmt
from svlab.delta_complex import build_circle, build_polygon_surface, fundamental_cycle, validate
from svlab.errors import Inconsistent, ParseError, SvlabError
from svlab.measures import chain_of, total_variation
from svlab.parallel import thread_count
from svlab.paths import PathChain, path_norm_bound, wrap_path, winding
from svlab.seminorm import class_norm, dual_solution, verify_certificate
from svlab.smearing import build_tower, class_from_integration, smear
from svlab.subdivision import is_simplicial, subdivide_times

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_INTERNAL = 0, 2, 3, 4


class UsageError(ParseError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _builder(spec: str):
    kind, _, arg = spec.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise UsageError(f"bad builder {spec!r}; use surface:<g> or circle:<n>") from None
    if n < 1:
        raise UsageError(f"builder size must be >= 1 in {spec!r}")
    if kind == "surface":
        return build_polygon_surface(n)
    if kind == "circle":
        return build_circle(n)
    raise UsageError(f"unknown builder {kind!r}; use surface:<g> or circle:<n>")


def _input(args):
    """``(document, complex)`` from a DCX path or ``--builder``."""
    if args.builder:
        X = _builder(args.builder)
        doc = DcxDocument()
        doc.add_complex(X.name, X)
        return doc, X
    if not args.path:
        raise UsageError("give a DCX file or --builder")
    doc = _load(args.path)
    if getattr(args, "complex", None):
        if args.complex not in doc.complexes:
            raise UsageError(f"no complex named {args.complex!r}")
        return doc, doc.complexes[args.complex]
    if not doc.complexes:
        return doc, None
    return doc, next(iter(doc.complexes.values()))


def _load(path, known=None):
    try:
        return dcx.load(path, known)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _class_chain(spec, doc, X) -> RationalChain:
    if spec in (None, "fundamental"):
        return fundamental_cycle(X)
    other = _load(spec, doc.complexes)
    return other.only("chains")


def _cocycle(spec, doc, X) -> EdgeCocycle:
    if spec is None:
        raise UsageError("--cocycle is required")
    if spec.startswith("auto:"):
        try:
            d = int(spec[5:])
        except ValueError:
            raise UsageError(f"bad cocycle spec {spec!r}") from None
        if d < 1:
            raise UsageError("auto:<d> needs d >= 1")
        return auto_cocycle(X, d)
    other = _load(spec, doc.complexes)
    return other.only("cocycles")


def _write(args, doc):
    if args.out:
        dcx.dump(doc, args.out)


def cmd_check(args, out):
    doc, X = _input(args)
    targets = [X] if args.builder or args.complex else list(doc.complexes.values())
    if not targets:
        raise SvlabError("document contains no complex")
    for Y in targets:
        report = validate(Y)
        prefix = f"complex={Y.name} " if len(targets) > 1 else ""
        out(f"{prefix}{report.summary()} orientable={str(report.orientable_top).lower()}")


def cmd_norm(args, out):
    doc, X = _input(args)
    z = _class_chain(args.class_spec, doc, X)
    cert = class_norm(z)
    line = f"norm={fmt(cert.class_norm)}"
    if args.dual:
        value, _ = dual_solution(z)
        if value is None:
            line += " dual=infeasible"
        else:
            if value * cert.class_norm != 1:
                raise Inconsistent("strong duality failed")
            line += f" dual={fmt(value)}"
        verdict = verify_certificate(cert)
        if not verdict:
            raise Inconsistent(f"certificate rejected: {verdict.reason}")
        if args.out:
            cdoc = DcxDocument()
            cdoc.add_complex(z.complex.name, z.complex)
            cdoc.chains["cycle"] = z
            cdoc.chains["optimal"] = cert.optimal_cycle
            if cert.witness is not None:
                cdoc.chains["witness"] = cert.witness
            if cert.dual_cochain is not None:
                cdoc.cochains["dual"] = cert.dual_cochain
            cdoc.values["norm"] = cert.class_norm
            dcx.dump(cdoc, args.out)
    out(line)


def _cover_doc(X, cm, base_name="base"):
    doc = DcxDocument()
    doc.add_complex(base_name, X)
    doc.add_complex("cover", cm.total)
    doc.cocycles["labels"] = cm.cocycle
    return doc


def _genus_field(Y):
    if Y.dim == 2:
        g = surface_genus(Y)
        return f" genus={g.numerator if g.denominator == 1 else fmt(g)}"
    return ""


def cmd_cover(args, out):
    doc, X = _input(args)
    cm = build_cyclic_cover(_cocycle(args.cocycle, doc, X))
    out(f"chi={cm.total.euler_char}{_genus_field(cm.total) if cm.connected else ''} sheets={cm.d}")
    out(f"components={cm.components}")
    _write(args, _cover_doc(X, cm))


def cmd_transfer(args, out):
    doc, X = _input(args)
    cm = build_cyclic_cover(_cocycle(args.cocycle, doc, X))
    a = _class_chain(args.class_spec, doc, X)
    lifted = transfer(cm, a)
    out(f"sheets={cm.d} l1={fmt(l1_norm(a))} l1_transfer={fmt(l1_norm(lifted))}")
    if lifted.k > 0 and not boundary(lifted) and args.class_spec in (None, "fundamental"):
        lam = homology_class_decompose(lifted, [fundamental_cycle(cm.total)]).coefficients[0]
        out(f"class={fmt(lam)}")
    if args.out:
        tdoc = _cover_doc(X, cm)
        tdoc.chains["lifted"] = lifted
        dcx.dump(tdoc, args.out)


def cmd_smear(args, out):
    if args.tower:
        doc = _load(args.tower)
        spec = doc.only("towers")
        cocycle = doc.cocycles[spec.cocycle]
    else:
        doc, X = _input(args)
        cocycle = _cocycle(args.cocycle, doc, X)
    tower = build_tower(cocycle)
    e, m = args.from_, args.to
    Qe = tower.Q(e)
    if args.chain in (None, "fundamental"):
        c = fundamental_cycle(Qe)
    else:
        c = _load(args.chain, {"Q": Qe}).only("chains")
    mu = smear(tower, e, m, c)
    tov, l1 = total_variation(mu.measure), l1_norm(c)
    out(f"tov={fmt(tov)} l1={fmt(l1)}")
    out(f"tov<=l1={'true' if tov <= l1 else 'false'}")
    if mu.k == tower.base.dim and not (mu.k > 0 and boundary(chain_of(mu))):
        out(f"ratio={fmt(class_from_integration(mu, tower.Q(m)))}")
    if args.out:
        sdoc = DcxDocument()
        sdoc.add_complex("Q", tower.Q(m))
        sdoc.measures["smeared"] = mu
        dcx.dump(sdoc, args.out)


def cmd_wrap(args, out):
    if args.circle is None:
        raise UsageError("--circle <n> is required")
    C = build_circle(args.circle)
    if args.times is not None:
        p = wrap_path(C, args.times)
        out(f"length={len(p.terms[0][0])} winding={fmt(winding(p))}")
    if args.max_len is not None:
        w = dcx.parse_rational(args.winding if "/" in args.winding else args.winding + "/1")
        bound = path_norm_bound(w, C, args.max_len)
        out(f"bound={fmt(bound)}")
        if args.out and w:
            n = args.circle
            wraps = args.max_len // n
            pdoc = DcxDocument()
            pdoc.add_complex(C.name, C)
            pdoc.paths["optimal"] = PathChain(C, [(wrap_path(C, wraps).terms[0][0], w / wraps)])
            dcx.dump(pdoc, args.out)
    if args.times is None and args.max_len is None:
        raise UsageError("give --times and/or --max-len")


def cmd_subdivide(args, out):
    doc, X = _input(args)
    steps = subdivide_times(X, args.times)
    Y = steps[-1].target if steps else X
    report = validate(Y)
    counts = ",".join(map(str, Y.counts))
    out(f"counts={counts} {report.summary()} simplicial={str(is_simplicial(Y)).lower()}")
    if report.orientable_top and steps:
        z = fundamental_cycle(X)
        for step in steps:
            z = step.apply(z)
        lam = homology_class_decompose(z, [report.fundamental_cycle]).coefficients[0]
        out(f"fundamental={fmt(lam)}")
    if args.out:
        sdoc = DcxDocument()
        sdoc.add_complex("subdivided", Y)
        dcx.dump(sdoc, args.out)


def build_parser():
    parser = _Parser(prog="svlab", description="Exact finite-scale simplicial volume computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, cocycle=False, klass=False):
        p.add_argument("path", nargs="?", help="DCX input file")
        p.add_argument("--builder", help="surface:<g> or circle:<n> instead of a file")
        p.add_argument("--complex", help="which complex of the file to use (default: first)")
        p.add_argument("--out", help="write results to this DCX file")
        if cocycle:
            p.add_argument("--cocycle", help="cocycle DCX file or auto:<d>")
        if klass:
            p.add_argument("--class", dest="class_spec", default="fundamental",
                           help="'fundamental' or a DCX file holding one chain")

    p = sub.add_parser("check", help="validate a complex")
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("norm", help="exact ℓ¹ class norm")
    common(p, klass=True)
    p.add_argument("--dual", action="store_true", help="also solve the dual and check the certificate")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("cover", help="build a cyclic cover")
    common(p, cocycle=True)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("transfer", help="lift a chain to a cyclic cover")
    common(p, cocycle=True, klass=True)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("smear", help="smear a chain between quotients of a tower")
    common(p, cocycle=True)
    p.add_argument("--tower", help="DCX file holding one tower")
    p.add_argument("--from", dest="from_", type=int, required=True)
    p.add_argument("--to", type=int, required=True)
    p.add_argument("--chain", default="fundamental", help="'fundamental' or a chain file on complex Q")
    p.set_defaults(func=cmd_smear)

    p = sub.add_parser("wrap", help="wrapped paths on a circle and the 1/d norm bound")
    p.add_argument("--circle", type=int)
    p.add_argument("--max-len", dest="max_len", type=int)
    p.add_argument("--winding", default="1")
    p.add_argument("--times", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_wrap)

    p = sub.add_parser("subdivide", help="iterated barycentric subdivision")
    common(p)
    p.add_argument("--times", type=int, default=1)
    p.set_defaults(func=cmd_subdivide)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    def out(line):
        stdout.write(line + "\n")

    try:
        thread_count()
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except Inconsistent as exc:
        stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except ParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except SvlabError as exc:
        where = ""
        ctx = getattr(exc, "context", {})
        if ctx.get("cell") is not None:
            where = f" (cell {ctx['dim']}:{ctx['cell']})" if "dim" in ctx else f" (cell {ctx['cell']})"
        stderr.write(f"error: {exc.code}: {exc}{where}\n")
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
