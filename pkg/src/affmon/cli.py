"""Command-line front end.

Exit codes: 0 success, 2 unparsable input, 3 violated precondition,
4 bounded search found nothing, 1 anything else.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import catalog
from .algebra import CoefficientDomain, parse_element
from .closures import (hilbert_basis, interior_points, is_normal, is_seminormal,
                       normalization, seminormalize)
from .errors import (AlgorithmDisagreement, InputError, ParseError, PreconditionError,
                     SearchExhausted)
from .monoid import (AffineMonoid, group_of_fractions, is_phi_simplicial, membership_witness,
                     monoid_cone, rank)
from .shear import (Progression, ShearAutomorphism, monicize, rank2_canonical_form,
                    restricts_to_monoid, search_level)

EXIT_OK, EXIT_ERROR, EXIT_PARSE, EXIT_PRECONDITION, EXIT_EXHAUSTED = 0, 1, 2, 3, 4
SPEC_SUFFIXES = (".txt", ".json", ".monoid")


def default_limit() -> int:
    return int(os.environ.get("AFFMON_SEARCH_LIMIT", "40"))


# -- input ----------------------------------------------------------------------

def parse_spec_text(text: str, source: str = "<input>") -> AffineMonoid:
    """Read the line format (``rank: r``, optional ``name: ...``, then one
    generator per line) or the equivalent JSON object."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: invalid JSON: {exc.msg}", exc.pos) from None
        if not isinstance(data, dict) or "rank" not in data or "generators" not in data:
            raise ParseError(f"{source}: JSON needs 'rank' and 'generators'")
        r, gens, name = data["rank"], data["generators"], data.get("name")
        if not isinstance(r, int) or not isinstance(gens, list) or \
                not all(isinstance(g, list) and all(isinstance(x, int) for x in g) for g in gens):
            raise ParseError(f"{source}: 'rank' must be an integer and 'generators' a list of integer lists")
    else:
        r, name, gens = None, None, []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition(":")
            if sep:
                key = key.strip().lower()
                if key == "rank":
                    try:
                        r = int(value)
                    except ValueError:
                        raise ParseError(f"{source}:{lineno}: rank must be an integer") from None
                elif key == "name":
                    name = value.strip()
                else:
                    raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
                continue
            try:
                gens.append([int(x) for x in line.split()])
            except ValueError:
                raise ParseError(f"{source}:{lineno}: generators are whitespace-separated integers") from None
        if r is None:
            raise ParseError(f"{source}: missing 'rank:' line")
    for g in gens:
        if len(g) != r:
            raise ParseError(f"{source}: generator {g} has {len(g)} entries, rank is {r}")
    try:
        return AffineMonoid(r, tuple(tuple(g) for g in gens), name)
    except InputError as exc:
        raise ParseError(f"{source}: {exc}") from None


def load_monoid(args) -> AffineMonoid:
    if getattr(args, "catalog", None):
        return catalog.get(args.catalog)
    if getattr(args, "file", None):
        path = Path(args.file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None
        return parse_spec_text(text, str(path))
    raise ParseError("give a monoid with --file or --catalog")


def monoid_to_spec(M: AffineMonoid) -> dict:
    out = {"rank": M.ambient_rank, "generators": [list(g) for g in M.generators]}
    if M.name:
        out["name"] = M.name
    return out


def gens(M: AffineMonoid) -> list[list[int]]:
    return [list(g) for g in M.generators]


# -- reports --------------------------------------------------------------------

def classify(M: AffineMonoid, cphi_bound: int | None = None, limit: int | None = None,
             timings: bool = False) -> dict:
    """Aggregate classification report for one monoid."""
    clock: dict[str, float] = {}

    def timed(label, fn, *a, **kw):
        t0 = time.perf_counter()
        out = fn(*a, **kw)
        clock[label] = round(time.perf_counter() - t0, 6)
        return out

    report = {"input": monoid_to_spec(M)}
    report["ambient_rank"] = M.ambient_rank
    report["rank"] = timed("rank", rank, M)
    phi = timed("phi_simplicial", is_phi_simplicial, M)
    report["phi_simplicial"] = phi
    norm = timed("normalization", normalization, M)
    sn = timed("seminormalization", seminormalize, M, cross_check=True)
    report["normal"] = timed("normal", is_normal, M)
    report["seminormal"] = timed("seminormal", is_seminormal, M)
    report["normalization"] = gens(norm)
    report["seminormalization"] = {
        "generators": gens(sn.monoid),
        "bound": sn.bound,
        "certificate": sn.certificate,
        "cross_checked": sn.cross_checked,
    }
    report["canonical2"] = None
    if M.ambient_rank == 2 and phi and report["normal"]:
        report["canonical2"] = list(timed("canonical2", rank2_canonical_form, M))
    if cphi_bound is not None:
        if not phi:
            raise PreconditionError("C(Phi) witness search needs a Phi-simplicial monoid")
        report["cphi"] = timed("cphi", cphi_report, M, cphi_bound, limit or default_limit())
    if timings:
        report["timings"] = clock
    return report


def cphi_report(M: AffineMonoid, bound_c: int, limit: int) -> dict:
    levels = []
    for m in range(2, M.ambient_rank + 1):
        lw = search_level(M, m, bound_c, limit)
        levels.append({
            "level": m,
            "c": list(lw.c) if lw else None,
            "transcript": [str(line) for line in lw.check.transcript] if lw else [],
        })
    return {"bound_c": bound_c, "search_limit": limit, "levels": levels,
            "witness_found": all(lv["c"] is not None for lv in levels)}


def _fmt_gens(rows) -> str:
    return ", ".join("(" + ",".join(str(x) for x in g) + ")" for g in rows)


def render_text(report: dict) -> str:
    lines = []
    inp = report["input"]
    if inp.get("name"):
        lines.append(f"name: {inp['name']}")
    lines.append(f"generators: {_fmt_gens(inp['generators'])}")
    lines.append(f"rank: {report['rank']} (ambient {report['ambient_rank']})")
    for key in ("phi_simplicial", "normal", "seminormal"):
        lines.append(f"{key}: {str(report[key]).lower()}")
    lines.append(f"normalization: {_fmt_gens(report['normalization'])}")
    sn = report["seminormalization"]
    lines.append(f"seminormalization: {_fmt_gens(sn['generators'])} "
                 f"[{sn['certificate']} {sn['bound']}{', cross-checked' if sn['cross_checked'] else ''}]")
    if report.get("canonical2") is not None:
        lines.append(f"canonical2: {tuple(report['canonical2'])}")
    if "cphi" in report:
        c = report["cphi"]
        lines.append(f"cphi witness (c > {c['bound_c']}, limit {c['search_limit']}): "
                     f"{'found' if c['witness_found'] else 'not found'}")
        for lv in c["levels"]:
            lines.append(f"  level {lv['level']}: {lv['c'] if lv['c'] else 'none within limit'}")
    if "timings" in report:
        lines.append("timings: " + ", ".join(f"{k}={v:.4f}s" for k, v in report["timings"].items()))
    return "\n".join(lines)


def emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


# -- commands --------------------------------------------------------------------

def cmd_classify(args) -> int:
    if args.dir:
        return classify_dir(args)
    M = load_monoid(args)
    report = classify(M, args.cphi, args.limit, args.timings)
    emit(args, report, render_text(report))
    return EXIT_OK


def classify_dir(args) -> int:
    if not Path(args.dir).is_dir():
        raise InputError(f"{args.dir} is not a directory")
    files = sorted(p for p in Path(args.dir).iterdir() if p.suffix in SPEC_SUFFIXES)
    results, worst = [], EXIT_OK
    for path in files:
        try:
            M = parse_spec_text(path.read_text(), str(path))
            report = classify(M, args.cphi, args.limit, args.timings)
            results.append({"file": path.name, "exit_code": EXIT_OK, "report": report})
        except Exception as exc:  # noqa: BLE001 - one bad file must not stop the batch
            code = exit_code_for(exc)
            results.append({"file": path.name, "exit_code": code, "error": str(exc)})
            worst = max(worst, code)
    if args.format == "json":
        print(json.dumps({"files": results}, sort_keys=True, indent=2))
    else:
        for res in results:
            print(f"== {res['file']}")
            print(render_text(res["report"]) if "report" in res else f"error: {res['error']}")
    return worst


def cmd_normalize(args) -> int:
    M = load_monoid(args)
    N = normalization(M)
    emit(args, {"generators": gens(N)}, _fmt_gens(gens(N)))
    return EXIT_OK


def cmd_seminormalize(args) -> int:
    M = load_monoid(args)
    sn = seminormalize(M, cross_check=args.cross_check)
    payload = {"generators": gens(sn.monoid), "bound": sn.bound, "certificate": sn.certificate,
               "cross_checked": sn.cross_checked}
    emit(args, payload, f"{_fmt_gens(payload['generators'])}\n[{sn.certificate} {sn.bound}]")
    return EXIT_OK


def cmd_hilbert(args) -> int:
    M = load_monoid(args)
    C = monoid_cone(M)
    hb = hilbert_basis(C, group_of_fractions(M))
    payload = {
        "hilbert_basis": [list(h) for h in hb.elements],
        "extreme_rays": [list(r) for r in C.extreme_rays],
        "facet_normals": [list(n) for n in C.facet_normals],
        "lattice_basis": [list(b) for b in hb.lattice.basis],
    }
    text = "\n".join([
        f"hilbert basis: {_fmt_gens(payload['hilbert_basis'])}",
        f"extreme rays: {_fmt_gens(payload['extreme_rays'])}",
        f"facet normals: {_fmt_gens(payload['facet_normals'])}",
        f"lattice basis: {_fmt_gens(payload['lattice_basis'])}",
    ])
    emit(args, payload, text)
    return EXIT_OK


def cmd_member(args) -> int:
    M = load_monoid(args)
    w = membership_witness(M, args.vector)
    payload = {"member": w is not None, "vector": list(args.vector),
               "witness": None if w is None else dict(zip((" ".join(map(str, g)) for g in M.generators), w))}
    emit(args, payload, "true" if w is not None else "false")
    return EXIT_OK


def cmd_monicize(args) -> int:
    M = load_monoid(args)
    domain = CoefficientDomain.parse(args.domain)
    f = parse_element(args.element, domain, M.ambient_rank)
    allowed = None
    if args.progression:
        progs = [Progression.parse(p) for p in args.progression]
        allowed = progs * (M.ambient_rank - 1) if len(progs) == 1 else progs
    eta, image = monicize(f, M, allowed, args.limit or default_limit())
    payload = {"c": list(eta.c), "shear": str(eta), "image": str(image), "monic": True}
    emit(args, payload, f"shear: {eta}\nimage: {image}\nmonic: true")
    return EXIT_OK


def cmd_eta_check(args) -> int:
    M = load_monoid(args)
    eta = ShearAutomorphism(M.ambient_rank, tuple(args.c))
    check = restricts_to_monoid(eta, M)
    payload = {"c": list(eta.c), "restricts": check.restricts,
               "transcript": [str(line) for line in check.transcript]}
    emit(args, payload, "\n".join([f"restricts: {str(check.restricts).lower()}"]
                                  + [f"  {line}" for line in check.transcript]))
    return EXIT_OK


def cmd_cphi_witness(args) -> int:
    M = load_monoid(args)
    if not is_phi_simplicial(M):
        raise PreconditionError("C(Phi) witness search needs a Phi-simplicial monoid")
    if args.bound < 1:
        raise InputError("bound must be at least 1")
    rep = cphi_report(M, args.bound, args.limit or default_limit())
    text = [f"witness: {'found' if rep['witness_found'] else 'not found within limit'}"]
    for lv in rep["levels"]:
        text.append(f"level {lv['level']}: c = {lv['c']}")
        text.extend(f"  {t}" for t in lv["transcript"])
    emit(args, rep, "\n".join(text))
    return EXIT_OK if rep["witness_found"] else EXIT_EXHAUSTED


def cmd_interior(args) -> int:
    M = load_monoid(args)
    pts = interior_points(M, args.bound)
    emit(args, {"points": [list(p) for p in pts]}, _fmt_gens(pts))
    return EXIT_OK


def cmd_canonical2(args) -> int:
    M = load_monoid(args)
    a1, a2 = rank2_canonical_form(M)
    emit(args, {"a1": a1, "a2": a2}, f"({a1}, {a2})")
    return EXIT_OK


# -- wiring ----------------------------------------------------------------------

def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    if isinstance(exc, InputError):
        return EXIT_PARSE
    if isinstance(exc, SearchExhausted):
        return EXIT_EXHAUSTED
    return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("-f", "--file", help="monoid spec file (line format or JSON)")
    src.add_argument("-c", "--catalog", help="catalog name, e.g. 'veronese(2,2)' or 'mixed-squares'")
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="affmon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="full classification report")
    p.add_argument("--dir", help="classify every spec file in a directory")
    p.add_argument("--cphi", type=int, metavar="BOUND", help="also search for a C(Phi) witness with c_i > BOUND")
    p.add_argument("--limit", type=int, help="search limit for c_i (default $AFFMON_SEARCH_LIMIT or 40)")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings")
    p.set_defaults(func=cmd_classify)

    sub.add_parser("normalize", parents=[common], help="Hilbert basis of cone(M) cap gp(M)").set_defaults(func=cmd_normalize)

    p = sub.add_parser("seminormalize", parents=[common], help="generators of the seminormalization")
    p.add_argument("--cross-check", action="store_true", help="also run the 2z/3z fixpoint and compare")
    p.set_defaults(func=cmd_seminormalize)

    sub.add_parser("hilbert", parents=[common], help="cone, lattice and Hilbert basis").set_defaults(func=cmd_hilbert)

    p = sub.add_parser("member", parents=[common], help="membership of an exponent vector")
    p.add_argument("vector", type=int, nargs="+")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("monicize", parents=[common], help="shear an element into a monic one")
    p.add_argument("element", help="e.g. '3*t1^2*t2 + t2^4'")
    p.add_argument("--domain", default="QQ", help="ZZ, QQ or ZZ/m")
    p.add_argument("--progression", action="append", metavar="START:STEP",
                   help="allowed c_i values; give once for all i or once per i")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_monicize)

    p = sub.add_parser("eta-check", parents=[common], help="does the shear with these exponents restrict to M")
    p.add_argument("c", type=int, nargs="+")
    p.set_defaults(func=cmd_eta_check)

    p = sub.add_parser("cphi-witness", parents=[common], help="shears restricting to every truncation")
    p.add_argument("bound", type=int)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_cphi_witness)

    p = sub.add_parser("interior", parents=[common], help="lattice points strictly inside the cone")
    p.add_argument("bound", type=int)
    p.set_defaults(func=cmd_interior)

    sub.add_parser("canonical2", parents=[common], help="rank-2 normal form (a1, a2)").set_defaults(func=cmd_canonical2)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SearchExhausted, AlgorithmDisagreement) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
