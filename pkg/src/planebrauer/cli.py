"""Command-line front end: planebrauer <subcommand> [options]."""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass

from .clifford import (
    LadderError,
    clifford_residue,
    clifford_symbols,
    diagonalize,
    ensure_principal_minors,
)
from .dblcover import (
    FixtureBudgetExhausted,
    ResolutionError,
    SymResolution,
    au_residue_report,
    branch_curve,
    compatibility_check,
    gen_fixture,
    line_meets_transversally,
    weil_divisor,
)
from .invariants import TSV_HEADER, InvariantError, brauer_p_rank, hodge_invariants
from .moduli import K3_HEADER, PartitionError, k3_catalog, moduli_dim, verify_combinatorics
from .polycore.fields import FieldTag
from .polycore.matrix import FormMatrix
from .polycore.parse import PolySyntaxError, parse_poly
from .symbolalg import PAPER, TAME, SymbolClass, SymbolError, residue_profile, residue_symbol
from .valuation.curves import PlaneCurve
from .valuation.residue import class_triviality

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    field: FieldTag
    seed: int
    mode: str
    fmt: str
    input: object
    out: object


def _read_json(path):
    if path in (None, "-"):
        text = sys.stdin.read()
        name = "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        name = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{name}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _tsv(rows):
    return "".join("\t".join(str(v) for v in r) + "\n" for r in rows)


def _emit_json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _parse_parts(text):
    try:
        parts = [int(p) for p in text.replace("+", ",").split(",") if p.strip()]
    except ValueError:
        raise InputError(f"bad partition {text!r}; use e.g. 2,2,2") from None
    if not parts:
        raise InputError("empty partition")
    return sorted(parts, reverse=True)


# subcommands; each returns (exit code, text)


def cmd_residues(cfg, args):
    data = _read_json(args.input)
    s = SymbolClass.from_json(data, cfg.field)
    declared = [PlaneCurve(parse_poly(c, cfg.field)) for c in data.get("curves", [])] if isinstance(data, dict) else []
    prof = residue_profile(s, mode=cfg.mode, declared=declared, seed=cfg.seed)
    if cfg.fmt == "json":
        return EXIT_OK, _emit_json(prof.to_json())
    rows = [("curve", "status", "residue")]
    for c, st in sorted(prof.status.items(), key=lambda kv: kv[0].key):
        r = prof.entries.get(c)
        rows.append((c.key, st, r.value if r is not None else "1"))
    return EXIT_OK, _tsv(rows)


def cmd_clifford(cfg, args):
    data = _read_json(args.input)
    rows = data["matrix"] if isinstance(data, dict) else data
    if not isinstance(rows, list):
        raise InputError("expected a matrix (list of rows) or {\"matrix\": ...}")
    m = FormMatrix.from_rows(rows, cfg.field)
    ladder = ensure_principal_minors(m, seed=cfg.seed)
    diag = diagonalize(ladder)
    out = {"ladder": ladder.to_json(), "diagonal": diag.to_json()}
    s = None
    if cfg.field.sqrt_minus_one() is not None:
        s = clifford_symbols(diag)
        out["symbols"] = s.to_json()
    curves = [PlaneCurve(parse_poly(c, cfg.field)) for c in data.get("curves", [])] if isinstance(data, dict) else []
    res = []
    for c in curves:
        r = clifford_residue(ladder, c)
        entry = {"curve": c.key, "residue": r.value.to_json(), "status": class_triviality(r, seed=cfg.seed)}
        if s is not None:
            r2 = residue_symbol(s, c, cfg.mode)
            entry["symbol_route_agrees"] = class_triviality(r / r2, seed=cfg.seed)
        res.append(entry)
    out["residues"] = res
    if cfg.fmt == "json":
        return EXIT_OK, _emit_json(out)
    lines = [("i", "minor", "diagonal_entry")]
    for i, (g, d) in enumerate(zip(ladder.minors, diag.entries), start=1):
        lines.append((i, g, d))
    for e in res:
        lines.append(("residue", e["curve"], e["status"]))
    return EXIT_OK, _tsv(lines)


def _fixture(cfg, args):
    return SymResolution.from_json(_read_json(args.input))


def cmd_resolution_check(cfg, args):
    r = _fixture(cfg, args)
    br = branch_curve(r, seed=cfg.seed)
    trans = line_meets_transversally(r)
    out = {"valid": True, "n": r.n, "e": r.degree_e, "eps": r.epsilon, "partition": list(r.partition),
           "branch": br.to_json(), "line_transversal": trans}
    if cfg.fmt == "json":
        return EXIT_OK, _emit_json(out)
    rows = [("valid", "n", "e", "eps", "partition", "smooth", "line_transversal", "branch_curve"),
            (True, r.n, r.degree_e, r.epsilon, "+".join(map(str, r.partition)), br.smooth, trans, br.curve.f)]
    return EXIT_OK, _tsv(rows)


def cmd_weil_divisor(cfg, args):
    r = _fixture(cfg, args)
    D, twist = weil_divisor(r, seed=cfg.seed)
    if cfg.fmt == "json":
        return EXIT_OK, _emit_json({"D": D.to_json(), "degree": D.degree(), "twist": twist})
    rows = [("factor", "y", "mult")]
    rows += [(f, y, m) for f, y, m in (
        (c["factor"], c["y"], c["mult"]) for c in D.to_json()["clusters"])]
    rows.append(("# degree", D.degree(), f"twist {twist}"))
    return EXIT_OK, _tsv(rows)


def cmd_compat(cfg, args):
    r = _fixture(cfg, args)
    rep = compatibility_check(r, seed=cfg.seed, minor_index=args.minor_index)
    code = EXIT_OK if rep.passed else EXIT_FAIL
    if cfg.fmt == "json":
        out = rep.to_json()
        if args.residues:
            out["residues"] = au_residue_report(r, seed=cfg.seed).to_json()
        return code, _emit_json(out)
    rows = [("status", "minor_index", "deg_lhs", "deg_rhs", "twist", "symbol_route"),
            (rep.status, rep.minor_index, rep.lhs.degree(), rep.rhs.degree(), rep.twist, rep.symbol_route)]
    return code, _tsv(rows)


def cmd_invariants(cfg, args):
    inv = hodge_invariants(args.p, args.d)
    rank = brauer_p_rank(args.p, args.d, args.rho) if args.rho is not None else None
    if cfg.fmt == "json":
        out = inv.to_json()
        if rank is not None:
            out["rho"] = args.rho
            out["brauer_p_rank"] = rank
        return EXIT_OK, _emit_json(out)
    header = TSV_HEADER + (("rho", "brauer_p_rank") if rank is not None else ())
    row = inv.row() + ((args.rho, rank) if rank is not None else ())
    return EXIT_OK, _tsv([header, row])


def cmd_moduli_dim(cfg, args):
    rec = moduli_dim(args.e, _parse_parts(args.partition))
    if cfg.fmt == "json":
        return EXIT_OK, _emit_json(rec.to_json())
    rows = [("dim_L", "class", "e", "partition", "epsilon", "bound"),
            (rec.dim_L, "generic" if rec.generic else "special", rec.e, rec.label, rec.epsilon, rec.bound)]
    return EXIT_OK, _tsv(rows)


def cmd_verify_appendix(cfg, args):
    rep = verify_combinatorics(args.e_max)
    code = EXIT_OK if rep.ok else EXIT_FAIL
    if cfg.fmt == "json":
        return code, _emit_json(rep.to_json())
    rows = [("e", "equality_partitions")]
    for e, ps in rep.equality.items():
        rows.append((e, " ".join("+".join(map(str, p)) for p in ps)))
    for c in rep.counterexamples:
        rows.append(("# counterexample", c["e"], "+".join(map(str, c["parts"])), "; ".join(c["problems"])))
    rows.append((f"# checked {rep.checked} partitions",))
    rows.append((f"{len(rep.counterexamples)} counterexamples",))
    return code, _tsv(rows)


def cmd_k3_catalog(cfg, args):
    rows = k3_catalog()
    if cfg.fmt == "json":
        return EXIT_OK, _emit_json([r.to_json() for r in rows])
    return EXIT_OK, _tsv([K3_HEADER] + [(r.partition, r.parameter_count, r.square, r.quadric_bundle, r.tag)
                                        for r in rows])


def cmd_gen_fixture(cfg, args):
    F = cfg.field
    if not F.is_finite:
        raise InputError("fixture generation needs a prime field (exact smoothness test)")
    r = gen_fixture(_parse_parts(args.partition), field=F, seed=cfg.seed, eps=args.eps)
    return EXIT_OK, _emit_json(r.to_json())


COMMANDS = {
    "residues": cmd_residues,
    "clifford": cmd_clifford,
    "resolution-check": cmd_resolution_check,
    "weil-divisor": cmd_weil_divisor,
    "compat": cmd_compat,
    "invariants": cmd_invariants,
    "moduli-dim": cmd_moduli_dim,
    "verify-appendix": cmd_verify_appendix,
    "k3-catalog": cmd_k3_catalog,
    "gen-fixture": cmd_gen_fixture,
}


def _common(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--field", default=d("fp:13"), help="qq, qqi or fp:Q (default fp:13)")
    p.add_argument("--seed", type=int, default=d(0), help="seed for every randomized step")
    p.add_argument("--mode", choices=(TAME, PAPER), default=d(TAME), help="residue sign convention")
    p.add_argument("--format", dest="fmt", choices=("tsv", "json"), default=d("tsv"))
    p.add_argument("--out", default=d(None), help="write output here instead of stdout")


def build_parser():
    ap = argparse.ArgumentParser(prog="planebrauer", description=__doc__)
    _common(ap, False)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        _common(p, True)
        return p

    for name, help_ in (("residues", "residue profile of a symbol class (JSON)"),
                        ("clifford", "ladder, diagonal form, symbols and residues of a symmetric matrix")):
        add(name, help_).add_argument("input", nargs="?", default="-")
    for name, help_ in (("resolution-check", "validate a fixture and report its branch curve"),
                        ("weil-divisor", "divisor cut out by the last column of minors")):
        add(name, help_).add_argument("input", nargs="?", default="-")
    p = add("compat", "divisor-level compatibility check of a fixture")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--minor-index", type=int, default=None, help="use M_kk instead of M_nn (negative control)")
    p.add_argument("--residues", action="store_true", help="include the full residue report (JSON)")
    p = add("invariants", "invariants of the p-cyclic cover")
    p.add_argument("p", type=int)
    p.add_argument("d", type=int)
    p.add_argument("rho", type=int, nargs="?")
    p = add("moduli-dim", "dimension count for a partition")
    p.add_argument("e", type=int)
    p.add_argument("partition")
    p = add("verify-appendix", "check the dimension bound for all partitions up to e_max")
    p.add_argument("e_max", type=int)
    add("k3-catalog", "partitions of 6 and their parameter counts")
    p = add("gen-fixture", "rejection-sample a smooth fixture")
    p.add_argument("partition")
    p.add_argument("--eps", type=int, choices=(0, 1), default=None)
    return ap


def dispatch(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        field = FieldTag.parse(args.field)
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    cfg = RunConfig(args.subcommand, field, args.seed, args.mode, args.fmt, getattr(args, "input", None), args.out)
    try:
        code, text = COMMANDS[args.subcommand](cfg, args)
    except PolySyntaxError as exc:
        print(f"error: polynomial syntax: {exc}", file=stderr)
        return EXIT_INPUT
    except (InputError, ResolutionError, SymbolError, PartitionError, InvariantError, LadderError,
            FixtureBudgetExhausted, KeyError, TypeError, ValueError) as exc:
        msg = f"missing field {exc}" if isinstance(exc, KeyError) else str(exc)
        print(f"error: {msg}", file=stderr)
        return EXIT_INPUT
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None):
    sys.exit(dispatch(argv))


def run(argv):
    """(exit code, stdout, stderr) for tests."""
    out, err = io.StringIO(), io.StringIO()
    try:
        code = dispatch(argv, out, err)
    except SystemExit as exc:
        code = exc.code
    return code, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    main()
