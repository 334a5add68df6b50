"""Command-line interface: file formats, subcommands, report emission.

Exit codes: 0 = command ran (verdicts live in the report), 2 = usage or
parse error, 3 = a computation cap was exceeded, 4 = an internal
cross-check failed.  JSON output is deterministic (sorted keys) so
re-running a command on identical input is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    GradedAlgebra,
    NotFiniteDimensional,
    build_algebra,
    tensor,
)
from .homology import (
    CapExceeded,
    FreeModule,
    ModuleMap,
    deviations,
    minimal_resolution,
    presentation_of_k,
)
from .homotopylie import HomotopyLie, PBWCountError, embedded_deformation_obstruction
from .polyring import ParseError, PolyContext, parse_poly
from .pfaffcomplex import PfaffianError, generic_be_complex, verify_be
from .quaddual import (
    DualComponents,
    DualError,
    koszul_smoke,
    quadratic_dual,
)
from .scalars import QQ, field_from_name
from .totalacyclicity import (
    ComplexError,
    FreeComplex,
    acyclicity,
    check_complex,
    syzygy,
    total_acyclicity,
    totally_reflexive_check,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_CROSSCHECK = 4


class FileFormatError(ValueError):
    def __init__(self, path, line_no, message):
        self.path = path
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


# --------------------------------------------------------------------------
# algebra files


def parse_algebra_file(path: str, field_override: Optional[str] = None) -> AlgebraSpec:
    """Line-oriented grammar: `field Q` | `field F <p>`; `vars <name>+`;
    `rel <polynomial>`*.  `#` starts a comment."""
    field = None
    variables: List[str] = []
    relations: List[str] = []
    with open(path) as fh:
        for line_no, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(None, 1)
            keyword = parts[0]
            rest = parts[1].strip() if len(parts) > 1 else ""
            if keyword == "field":
                if field is not None:
                    raise FileFormatError(path, line_no, "duplicate field line")
                name = rest.replace(" ", "")
                try:
                    field = field_from_name(name)
                except ValueError as e:
                    raise FileFormatError(path, line_no, str(e))
            elif keyword == "vars":
                if variables:
                    raise FileFormatError(path, line_no, "duplicate vars line")
                variables = rest.split()
                if not variables:
                    raise FileFormatError(path, line_no, "vars line lists no variables")
            elif keyword == "rel":
                if not rest:
                    raise FileFormatError(path, line_no, "rel line has no polynomial")
                relations.append(rest)
            else:
                raise FileFormatError(path, line_no, f"unknown keyword {keyword!r}")
    if field is None:
        raise FileFormatError(path, 0, "missing field line")
    if not variables:
        raise FileFormatError(path, 0, "missing vars line")
    if field_override:
        field = field_from_name(field_override)
    try:
        return AlgebraSpec.from_strings(field, variables, relations)
    except (ParseError, AlgebraError, ValueError) as e:
        raise FileFormatError(path, 0, str(e))


def format_algebra_file(spec: AlgebraSpec) -> str:
    f = spec.field
    fname = "Q" if f == QQ else f"F {f.characteristic}"
    lines = [f"field {fname}", "vars " + " ".join(spec.variables)]
    for rel in spec.relations:
        lines.append(f"rel {rel}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# complex files


def parse_complex_file(path: str, field_override: Optional[str] = None):
    """Grammar: `algebra <path>`; `module <name> degrees <d>+`;
    `map <name> from <M> to <N>` followed by a bracketed matrix of
    polynomial strings; optional `periodic <p>`.

    Maps must be listed boundary-first: map k goes C_{k+1} -> C_k, so each
    map's target is the previous map's source ... i.e. each map's `to`
    module is the previous map's `from` module.
    """
    import os

    algebra_path = None
    modules = {}
    map_decls = []  # (name, from, to, matrix_text)
    period = None
    pending = None
    with open(path) as fh:
        lines = fh.readlines()
    i = 0
    while i < len(lines):
        line_no = i + 1
        line = lines[i].split("#", 1)[0].strip()
        i += 1
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        if kw == "algebra":
            if len(parts) != 2:
                raise FileFormatError(path, line_no, "algebra line needs one path")
            algebra_path = os.path.join(os.path.dirname(path), parts[1])
        elif kw == "module":
            if len(parts) < 4 or parts[2] != "degrees":
                raise FileFormatError(
                    path, line_no, "expected: module <name> degrees <d>+"
                )
            try:
                modules[parts[1]] = tuple(int(d) for d in parts[3:])
            except ValueError:
                raise FileFormatError(path, line_no, "degrees must be integers")
        elif kw == "map":
            if len(parts) != 6 or parts[2] != "from" or parts[4] != "to":
                raise FileFormatError(
                    path, line_no, "expected: map <name> from <M> to <N>"
                )
            # collect the bracketed matrix (may span lines)
            text = ""
            depth = 0
            started = False
            while i < len(lines):
                seg = lines[i].split("#", 1)[0]
                i += 1
                for ch in seg:
                    if ch == "[":
                        depth += 1
                        started = True
                    elif ch == "]":
                        depth -= 1
                text += seg
                if started and depth == 0:
                    break
            if not started or depth != 0:
                raise FileFormatError(path, line_no, "unterminated matrix literal")
            map_decls.append((parts[1], parts[3], parts[5], text.strip()))
        elif kw == "periodic":
            if len(parts) != 2:
                raise FileFormatError(path, line_no, "periodic line needs one integer")
            try:
                period = int(parts[1])
            except ValueError:
                raise FileFormatError(path, line_no, "period must be an integer")
        else:
            raise FileFormatError(path, line_no, f"unknown keyword {kw!r}")
    if algebra_path is None:
        raise FileFormatError(path, 0, "missing algebra line")
    spec = parse_algebra_file(algebra_path, field_override)
    A = build_algebra(spec)
    ctx = A.context
    if not map_decls:
        raise FileFormatError(path, 0, "complex file declares no maps")
    # chain the modules from the map list
    chain = [map_decls[0][2]]
    for name, src, tgt, _ in map_decls:
        if tgt != chain[-1]:
            raise FileFormatError(
                path, 0,
                f"map {name}: target {tgt!r} does not continue the chain "
                f"(expected {chain[-1]!r})",
            )
        chain.append(src)
    for mname in chain:
        if mname not in modules:
            raise FileFormatError(path, 0, f"undeclared module {mname!r}")
    free = [FreeModule(A, modules[m]) for m in chain]
    maps = []
    for k, (name, src, tgt, text) in enumerate(map_decls):
        entries = _parse_matrix(text, ctx, path, name)
        tR, sR = len(modules[tgt]), len(modules[src])
        if len(entries) != tR or any(len(r) != sR for r in entries):
            raise FileFormatError(
                path, 0,
                f"map {name}: matrix shape {len(entries)}x"
                f"{len(entries[0]) if entries else 0} does not match ranks {tR}x{sR}",
            )
        try:
            maps.append(ModuleMap(free[k + 1], free[k], entries))
        except ValueError as e:
            raise FileFormatError(path, 0, f"map {name}: {e}")
    try:
        return FreeComplex(A, 0, free, maps, period=period), A
    except ComplexError as e:
        raise FileFormatError(path, 0, str(e))


def _parse_matrix(text: str, ctx: PolyContext, path: str, name: str):
    """Parse `[[p, q], [r, s]]` of polynomial strings."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise FileFormatError(path, 0, f"map {name}: matrix must be bracketed")
    body = s[1:-1].strip()
    rows = []
    depth = 0
    cur = ""
    row_texts = []
    for ch in body:
        if ch == "[":
            depth += 1
            if depth == 1:
                cur = ""
                continue
        elif ch == "]":
            depth -= 1
            if depth == 0:
                row_texts.append(cur)
                continue
        if depth >= 1:
            cur += ch
    for rt in row_texts:
        row = []
        for cell in rt.split(","):
            cell = cell.strip()
            if not cell:
                continue
            try:
                row.append(parse_poly(cell, ctx))
            except ParseError as e:
                raise FileFormatError(path, 0, f"map {name}: bad entry {cell!r}: {e}")
        rows.append(row)
    return rows


# --------------------------------------------------------------------------
# report plumbing


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    if isinstance(x, float):
        return x
    return str(x)


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    report = _jsonable(report)
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n")
        return
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for k in sorted(val):
                walk(f"{prefix}.{k}" if prefix else k, val[k])
        elif isinstance(val, list):
            lines.append(f"{prefix} = {val}")
        else:
            lines.append(f"{prefix} = {val}")

    walk("", report)
    out.write("\n".join(lines) + "\n")


# --------------------------------------------------------------------------
# subcommand implementations


def _load(args) -> Tuple[AlgebraSpec, GradedAlgebra]:
    spec = parse_algebra_file(args.algebra, getattr(args, "field", None))
    return spec, build_algebra(spec)


def cmd_hilbert(args):
    spec, A = _load(args)
    return {
        "command": "hilbert",
        "input": args.algebra,
        "hilbert": A.hilbert(),
        "total_dim": A.total_dim(),
        "top_degree": A.top,
    }


def cmd_resolve(args):
    spec, A = _load(args)
    res = minimal_resolution(A, "k", hom_cap=args.steps)
    ok, why = res.verify(check_exactness=args.verify)
    if not ok:
        raise CrossCheckFailure(f"resolution self-check failed: {why}")
    return {
        "command": "resolve",
        "input": args.algebra,
        "betti": list(res.betti),
        "graded_betti": {f"{i},{g}": v for (i, g), v in sorted(res.graded_betti().items())},
        "verified": bool(args.verify),
    }


def cmd_poincare(args):
    spec, A = _load(args)
    res = minimal_resolution(A, "k", hom_cap=args.steps)
    return {
        "command": "poincare",
        "input": args.algebra,
        "coefficients": list(res.betti),
    }


def cmd_deviations(args):
    spec, A = _load(args)
    res = minimal_resolution(A, "k", hom_cap=3)
    eps = deviations(list(res.betti))
    return {
        "command": "deviations",
        "input": args.algebra,
        "betti": list(res.betti),
        "deviations": list(eps),
    }


def cmd_dual(args):
    spec, A = _load(args)
    dual = quadratic_dual(spec)
    comps = DualComponents(dual)
    dmax = min(args.degree_cap, 3)
    report = {
        "command": "dual",
        "input": args.algebra,
        "generators": list(dual.generator_names),
        "relation_count": len(dual.phis),
        "relations": dual.phi_strings(),
        "component_dims": {str(d): comps.dim(d) for d in range(dmax + 1)},
    }
    if args.smoke:
        report["koszul_smoke"] = koszul_smoke(A, dual)
    return report


def cmd_pi(args):
    spec, A = _load(args)
    lie = HomotopyLie(A)
    rep = lie.report()
    rep["command"] = "pi"
    rep["input"] = args.algebra
    return rep


def cmd_central(args):
    spec, A = _load(args)
    lie = HomotopyLie(A)
    dim, _basis = lie.central_pi2()
    return {
        "command": "central",
        "input": args.algebra,
        "pi2_dim": len(lie.pi2()),
        "center_dim": dim,
        "verdict": (
            "obstructed: no embedded deformation"
            if dim == 0
            else "unobstructed at this test"
        ),
    }


def cmd_obstruction(args):
    if args.tensor:
        spec_a = parse_algebra_file(args.tensor[0], args.field)
        spec_b = parse_algebra_file(args.tensor[1], args.field)
        rep = embedded_deformation_obstruction((spec_a, spec_b))
        rep["command"] = "obstruction"
        rep["input"] = list(args.tensor)
        return rep
    spec = parse_algebra_file(args.algebra, args.field)
    rep = embedded_deformation_obstruction(spec)
    rep["command"] = "obstruction"
    rep["input"] = args.algebra
    return rep


def cmd_gorenstein(args):
    spec, A = _load(args)
    soc = A.socle()
    return {
        "command": "gorenstein",
        "input": args.algebra,
        "hilbert": A.hilbert(),
        "socle_dim": soc.dimension,
        "gorenstein": soc.gorenstein,
        "verdict": "Gorenstein" if soc.gorenstein else "not Gorenstein",
    }


def cmd_tensor(args):
    spec_a = parse_algebra_file(args.algebras[0], args.field)
    spec_b = parse_algebra_file(args.algebras[1], args.field)
    spec = tensor(spec_a, spec_b)
    text = format_algebra_file(spec)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    A = build_algebra(spec)
    return {
        "command": "tensor",
        "input": list(args.algebras),
        "variables": list(spec.variables),
        "relation_count": len(spec.relations),
        "hilbert": A.hilbert(),
        "algebra_file": text,
        **({"output": args.output} if args.output else {}),
    }


def cmd_pfaffian(args):
    data = generic_be_complex(args.size)
    rep = verify_be(data)
    if rep["verdict"] != "pass":
        raise CrossCheckFailure("Pfaffian complex self-check failed")
    rep["command"] = "pfaffian"
    if args.show:
        rep["sigma"] = [str(s) for s in data.sigma]
    return rep


def cmd_tac_check(args):
    C, A = parse_complex_file(args.complex, args.field)
    chk = check_complex(C)
    rep = {
        "command": "tac-check",
        "input": args.complex,
        "check": chk,
    }
    if chk["is_complex"]:
        rep["total_acyclicity"] = total_acyclicity(C)
    return rep


def cmd_trm_check(args):
    if args.complex:
        C, A = parse_complex_file(args.complex, args.field)
        tac = total_acyclicity(C)
        pres = syzygy(C, args.syzygy)
        certificate = tac["verdict"] == "totally acyclic" and not tac["window_only"]
        rep = totally_reflexive_check(A, pres, args.depth, periodic_certificate=certificate)
        rep["command"] = "trm-check"
        rep["input"] = args.complex
        rep["module"] = f"syzygy {args.syzygy}"
        return rep
    spec, A = _load(args)
    pres = presentation_of_k(A)
    rep = totally_reflexive_check(A, pres, args.depth)
    rep["command"] = "trm-check"
    rep["input"] = args.algebra
    rep["module"] = "k"
    return rep


class CrossCheckFailure(RuntimeError):
    pass


# --------------------------------------------------------------------------
# argument surface


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tacalc",
        description="Exact-arithmetic calculator for finite-dimensional "
        "graded local algebras: resolutions, deviations, quadratic duals, "
        "homotopy Lie components, Pfaffian complexes, total acyclicity.",
    )
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def alg_cmd(name, fn, help_text):
        q = sub.add_parser(name, help=help_text)
        q.add_argument("algebra", help="algebra file")
        q.add_argument("--field", help="override the file's field (e.g. F32003)")
        q.set_defaults(fn=fn)
        return q

    alg_cmd("hilbert", cmd_hilbert, "Hilbert function of the quotient algebra")
    q = alg_cmd("resolve", cmd_resolve, "minimal free resolution of k (Betti numbers)")
    q.add_argument("--steps", type=int, default=3)
    q.add_argument("--verify", action="store_true", help="also verify exactness")
    q = alg_cmd("poincare", cmd_poincare, "Poincare series coefficients of k")
    q.add_argument("--steps", type=int, default=3)
    alg_cmd("deviations", cmd_deviations, "first three deviations")
    q = alg_cmd("dual", cmd_dual, "quadratic dual presentation and component dims")
    q.add_argument("--degree-cap", type=int, default=3)
    q.add_argument("--smoke", action="store_true", help="run the Koszul smoke test")
    alg_cmd("pi", cmd_pi, "homotopy Lie components pi^2, pi^3 and center")
    alg_cmd("central", cmd_central, "degree-2 center of the homotopy Lie algebra")

    q = sub.add_parser("obstruction", help="embedded-deformation obstruction")
    q.add_argument("algebra", nargs="?", help="algebra file (direct mode)")
    q.add_argument("--tensor", nargs=2, metavar=("A", "B"),
                   help="two algebra files; test the tensor product factorwise")
    q.add_argument("--field")
    q.set_defaults(fn=cmd_obstruction)

    alg_cmd("gorenstein", cmd_gorenstein, "socle dimension and Gorenstein verdict")

    q = sub.add_parser("tensor", help="tensor product of two algebra files")
    q.add_argument("algebras", nargs=2, metavar="ALG")
    q.add_argument("--output", "-o", help="write the resulting algebra file here")
    q.add_argument("--field")
    q.set_defaults(fn=cmd_tensor)

    q = sub.add_parser("pfaffian", help="generic grade-3 Pfaffian complex")
    q.add_argument("--size", type=int, required=True, help="odd size >= 3")
    q.add_argument("--show", action="store_true", help="print the Pfaffian vector")
    q.set_defaults(fn=cmd_pfaffian)

    q = sub.add_parser("tac-check", help="verify a complex file for total acyclicity")
    q.add_argument("complex", help="complex file")
    q.add_argument("--field")
    q.set_defaults(fn=cmd_tac_check)

    q = sub.add_parser("trm-check", help="totally-reflexive-module checker")
    q.add_argument("algebra", nargs="?", help="algebra file (module = k)")
    q.add_argument("--complex", help="complex file; check a syzygy module instead")
    q.add_argument("--syzygy", type=int, default=1, help="syzygy index (with --complex)")
    q.add_argument("--depth", type=int, default=4)
    q.add_argument("--field")
    q.set_defaults(fn=cmd_trm_check)
    return p


def run_command(argv) -> Tuple[int, Optional[dict]]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (EXIT_USAGE if e.code not in (0, None) else 0), None
    if args.subcommand == "obstruction" and bool(args.algebra) == bool(args.tensor):
        print("obstruction: give either an algebra file or --tensor A B",
              file=sys.stderr)
        return EXIT_USAGE, None
    if args.subcommand == "trm-check" and bool(args.algebra) == bool(args.complex):
        print("trm-check: give either an algebra file or --complex FILE",
              file=sys.stderr)
        return EXIT_USAGE, None
    try:
        report = args.fn(args)
    except (CapExceeded, NotFiniteDimensional) as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP, None
    except (FileFormatError, ParseError, PfaffianError, OSError, DualError,
            AlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE, None
    except (CrossCheckFailure, PBWCountError, ComplexError) as e:
        print(f"cross-check failure: {e}", file=sys.stderr)
        return EXIT_CROSSCHECK, None
    emit(report, args.format)
    return EXIT_OK, report


def main() -> None:
    code, _ = run_command(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
