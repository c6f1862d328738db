"""Command-line interface: ``findet COMMAND [problem-file] [options]``.

Exit codes: 0 success, 1 analysis error, 2 parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import determinacy as det
from . import experiments as exp
from .field import GF, QQ, FieldError, is_prime
from .localbasis import GeneratorIsUnit, Ideal, Submodule, UnitIdeal, standard_basis
from .matrixops import PolyMatrix
from .parsing import ParseError
from .polyring import Polynomial
from .problem import ProblemFile, parse_problem

COMMANDS = (
    "analyze",
    "tjurina",
    "milnor",
    "de",
    "fitting",
    "icis",
    "jet",
    "perturb-probe",
    "generic-column",
    "generic-perturb",
    "family-scan",
    "specialize",
    "std-basis",
)
RANDOMIZED = {"perturb-probe", "generic-column", "generic-perturb", "family-scan", "specialize"}
NO_FILE = {"generic-column"}


class UsageError(Exception):
    """Validation failure reported with exit code 2."""


class AnalysisError(Exception):
    """Analysis failure reported with exit code 1."""


# ---------------------------------------------------------------------------
# payload coercions


def _require_maximal(polys, what="generator"):
    for f in polys:
        if f.is_unit():
            raise UsageError(f"{what} {f} is a unit (not in the maximal ideal)")


def _as_ideal(prob: ProblemFile) -> Ideal:
    if prob.kind == "ideal":
        I = prob.payload
    elif prob.kind == "poly":
        I = Ideal(prob.ring, [prob.payload])
    elif prob.kind == "matrix" and prob.payload.ncols == 1:
        I = Ideal(prob.ring, prob.payload.column_entries())
    else:
        raise UsageError(f"this command needs an ideal, a polynomial or a column, not a {prob.kind}")
    _require_maximal(I.generators)
    return I


def _as_poly(prob: ProblemFile) -> Polynomial:
    if prob.kind == "poly":
        f = prob.payload
    elif prob.kind == "ideal" and len(prob.payload.generators) == 1:
        f = prob.payload.generators[0]
    elif prob.kind == "matrix" and prob.payload.shape == (1, 1):
        f = prob.payload[0, 0]
    else:
        raise UsageError(f"this command needs a single polynomial, not a {prob.kind}")
    _require_maximal([f], "polynomial")
    return f


def _as_matrix(prob: ProblemFile) -> PolyMatrix:
    if prob.kind == "matrix":
        A = prob.payload
    elif prob.kind == "ideal":
        A = PolyMatrix.column(prob.ring, prob.payload.generators)
    elif prob.kind == "poly":
        A = PolyMatrix.column(prob.ring, [prob.payload])
    else:
        raise UsageError(f"this command needs a matrix, not a {prob.kind}")
    _require_maximal(A.flat(), "entry")
    return A


def _as_column(prob: ProblemFile) -> PolyMatrix:
    A = _as_matrix(prob)
    if A.ncols != 1:
        raise UsageError(f"this command needs a column matrix, got shape {A.shape[0]}x{A.shape[1]}")
    return A


# ---------------------------------------------------------------------------
# commands; each returns (json dict, text)


def _simple(kind: str, source: str, prob: ProblemFile, key: str, value):
    data = {"schema": 1, "kind": kind, "input": source, "field": str(prob.field), key: det._num(value) if not isinstance(value, bool) else value}
    return data, f"{key}: {data[key]}"


def cmd_analyze(prob: ProblemFile, args):
    relation = args.relation
    if relation is None:
        relation = {"ideal": "contact", "poly": "right"}.get(prob.kind, "leftright")
    if relation == "contact":
        report = det.classify_contact(_as_ideal(prob))
    elif relation == "right":
        report = det.classify_right(_as_poly(prob))
    else:
        report = det.classify_matrix(_as_matrix(prob))
    return report.to_dict(), report.to_text()


def cmd_tjurina(prob, args):
    I = _as_ideal(prob)
    return _simple("tjurina", str(I), prob, "tau", det.tjurina(I))


def cmd_milnor(prob, args):
    f = _as_poly(prob)
    return _simple("milnor", str(f), prob, "mu", det.milnor(f))


def cmd_de(prob, args):
    A = _as_column(prob)
    return _simple("extended-codimension", str(A), prob, "d_e", det.extended_codim(A))


def cmd_fitting(prob, args):
    A = _as_matrix(prob)
    checks = det.fitting_height_check(A)
    data = {
        "schema": 1,
        "kind": "fitting",
        "input": str(A),
        "field": str(prob.field),
        "fitting": [c.to_dict() for c in checks],
        "necessary_condition": all(c.passed for c in checks),
    }
    lines = [f"t={c.t} height={c.height} expected={c.expected} {'pass' if c.passed else 'FAIL'}" for c in checks]
    if not data["necessary_condition"]:
        lines.append("a Fitting height is below the maximum: not finitely determined")
        if prob.field.is_finite and any(not c.passed and c.t > 1 for c in checks):
            lines.append(f"caveat: {det.CAVEAT_FITTING_FINITE_FIELD}")
    return data, "\n".join(lines)


def cmd_icis(prob, args):
    I = _as_ideal(prob)
    return _simple("icis", str(I), prob, "icis", det.icis_check(I))


def cmd_jet(prob, args):
    if args.k is None:
        raise UsageError("jet needs --k")
    if prob.kind == "poly":
        out = str(prob.payload.jet(args.k))
    elif prob.kind == "ideal":
        out = str(Ideal(prob.ring, [g.jet(args.k) for g in prob.payload.generators]))
    elif prob.kind in ("matrix", "parametric"):
        out = str(prob.payload.jet(args.k))
    else:
        raise UsageError("jet needs a polynomial, ideal or matrix")
    return {"schema": 1, "kind": "jet", "k": args.k, "field": str(prob.field), "jet": out}, out


def cmd_perturb_probe(prob, args):
    if args.k is None:
        raise UsageError("perturb-probe needs --k")
    relation = args.relation or ("right" if prob.kind == "poly" else "contact")
    if relation == "right":
        target = _as_poly(prob)
    elif relation == "contact":
        target = _as_ideal(prob)
    else:
        raise UsageError("perturb-probe supports --relation contact or right")
    report = det.perturbation_probe(target, args.k, args.trials, seed=args.seed)
    lines = [
        f"input: {report['input']}  relation: {report['relation']}  field: {report['field']}",
        f"k: {report['k']}  determinacy bound: {report['bound']}  seed: {report['seed']}  trials: {len(report['samples'])}",
    ]
    if report["below_bound"]:
        lines.append("note: k is below the proved bound")
    if report["falsified"]:
        s = report["samples"][report["first_mismatch"]]
        lines.append(f"mismatch at trial {s['trial']}: {', '.join(s['generators'])}")
        lines.append(f"not {args.k}-determined")
    else:
        lines.append("no invariant changed (evidence only)")
    return report, "\n".join(lines)


def _field_from_flag(text: str):
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    for prefix in ("F_", "Fp", "F", "GF"):
        if t.startswith(prefix) and t[len(prefix):].strip().isdigit():
            p = int(t[len(prefix):])
            if not is_prime(p):
                raise UsageError(f"{p} not prime")
            return GF(p)
    raise UsageError(f"unknown field {text!r} (expected Q or F_p)")


def cmd_generic_column(prob, args):
    if args.rows is None or args.nvars is None or args.exponent is None:
        raise UsageError("generic-column needs --rows, --vars and --exponent")
    field = _field_from_flag(args.field)
    try:
        gen = exp.generic_column(args.rows, args.nvars, args.exponent, field, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except exp.NoValidScheme as exc:
        raise AnalysisError(str(exc)) from None
    report = det.classify_column_g(gen.matrix)
    data = {
        "schema": 1,
        "kind": "generic-column",
        "field": str(field),
        "seed": args.seed,
        "coefficients": [[str(c) for c in row] for row in gen.scheme.coefficients],
        "N": args.exponent,
        "attempts": gen.attempts,
        "matrix": str(gen.matrix),
        "report": report.to_dict(),
    }
    text = f"coefficients: {data['coefficients']}\ncolumn: {gen.matrix}\n" + report.to_text()
    return data, text


def cmd_generic_perturb(prob, args):
    A = _as_matrix(prob)
    N = args.exponent if args.exponent is not None else 1
    B = exp.generic_perturbation(A, N, seed=args.seed)
    heights = exp.fitting_heights(B)
    data = {
        "schema": 1,
        "kind": "generic-perturbation",
        "field": str(prob.field),
        "seed": args.seed,
        "N": N,
        "input": str(A),
        "matrix": str(B),
        "samples": [{"point": t, "value": h, "expected": e, "pass": h == e} for t, h, e in heights],
    }
    lines = [f"perturbed: {B}"] + [f"t={t} height={h} expected={e} {'pass' if h == e else 'FAIL'}" for t, h, e in heights]
    return data, "\n".join(lines)


def cmd_family_scan(prob, args):
    if prob.kind != "family":
        raise UsageError("family-scan needs 'base' and 'direction' statements")
    base, direction = prob.payload
    _require_maximal(base.flat() + direction.flat(), "entry")
    points = prob.points or exp.default_sample_points(prob.field, prob.reference, seed=args.seed)
    try:
        spec = exp.FamilySpec(base, direction, points, prob.reference)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = exp.family_scan(spec, args.analysis, seed=args.seed)
    lines = [f"reference t={report['reference']['point']}: {report['reference']['value']}"]
    for s in report["samples"]:
        lines.append(f"t={s['point']}: {s['value']} {'ok' if s['pass'] else 'VIOLATION'}")
    lines.append("semicontinuous on all samples" if report["semicontinuous"] else f"violations at {report['violations']}")
    return report, "\n".join(lines)


def cmd_specialize(prob, args):
    if prob.kind != "parametric":
        raise UsageError("specialize needs 'params' and a 'matrix'")
    t = args.t if args.t is not None else 1
    try:
        report = exp.specialization_check(prob.payload, prob.parameters, t, seed=args.seed, count=args.samples)
    except exp.InconsistentSpecialization as exc:
        raise AnalysisError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"t={t} generic height: {report['generic_height']} (expected maximum {report['expected']})"]
    for s in report["samples"]:
        lines.append(f"{s['point']}: {s['value']}{'' if s['pass'] else '  non-generic'}")
    lines.append("consistent" if report["consistent"] else "inconsistent: fewer than 2/3 of samples attain the maximum")
    return report, "\n".join(lines)


def cmd_std_basis(prob, args):
    if prob.kind in ("ideal", "poly"):
        src = prob.payload if prob.kind == "ideal" else Ideal(prob.ring, [prob.payload])
    elif prob.kind in ("matrix", "parametric"):
        M = prob.payload
        src = Submodule(prob.ring, M.nrows, [M.column_entries(j) for j in range(M.ncols)])
    else:
        raise UsageError("std-basis needs an ideal, polynomial or matrix")
    basis = standard_basis(src)
    data = {
        "schema": 1,
        "kind": "standard-basis",
        "field": str(prob.field),
        "input": str(src) if prob.kind != "matrix" else str(prob.payload),
        "elements": [str(e) if isinstance(e, Polynomial) else [str(c) for c in e] for e in basis.elements],
        "leading_terms": [list(t) for t in basis.leading_terms],
        "k_dim": det._num(basis.k_dim()),
    }
    return data, basis.dump() + f"\n# dim_K of the quotient: {data['k_dim']}"


HANDLERS = {
    "analyze": cmd_analyze,
    "tjurina": cmd_tjurina,
    "milnor": cmd_milnor,
    "de": cmd_de,
    "fitting": cmd_fitting,
    "icis": cmd_icis,
    "jet": cmd_jet,
    "perturb-probe": cmd_perturb_probe,
    "generic-column": cmd_generic_column,
    "generic-perturb": cmd_generic_perturb,
    "family-scan": cmd_family_scan,
    "specialize": cmd_specialize,
    "std-basis": cmd_std_basis,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="findet", description="Finite determinacy of ideals, power series and matrices.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", nargs="?", help="problem file ('-' for standard input)")
    ap.add_argument("-e", "--problem", help="problem text given inline instead of a file")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--seed", type=int, help="random seed (required with --json for randomized commands)")
    ap.add_argument("--relation", choices=("contact", "right", "leftright"))
    ap.add_argument("--k", type=int, help="jet order or determinacy order to probe")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--t", type=int, help="minor size for specialize")
    ap.add_argument("--samples", type=int, default=exp.DEFAULT_SAMPLES, help="number of random specializations")
    ap.add_argument("--analysis", choices=exp.ANALYSES, default="singular-ideal")
    ap.add_argument("--field", default="Q", help="Q or F_p (generic-column)")
    ap.add_argument("--rows", type=int, help="m for generic-column")
    ap.add_argument("--vars", dest="nvars", type=int, help="s for generic-column")
    ap.add_argument("--exponent", type=int, help="N for generic-column and generic-perturb")
    return ap


def _read_problem(args) -> Optional[ProblemFile]:
    if args.command in NO_FILE and args.file is None and args.problem is None:
        return None
    if args.problem is not None:
        text = args.problem
    elif args.file is None:
        raise UsageError("missing problem file")
    elif args.file == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    return parse_problem(text)


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.command in RANDOMIZED and args.seed is None:
            if args.json:
                raise UsageError("--seed is required with --json for randomized commands")
            args.seed = 0
        for name in ("k", "trials", "t", "samples"):
            value = getattr(args, name)
            if value is not None and value < 0:
                raise UsageError(f"--{name} must be nonnegative")
        prob = _read_problem(args)
        data, text = HANDLERS[args.command](prob, args)
    except (ParseError, UsageError, GeneratorIsUnit, FieldError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    except (AnalysisError, UnitIdeal, det.PreconditionError, exp.NoValidScheme, exp.InfiniteReference, exp.InconsistentSpecialization, ArithmeticError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    if args.json:
        print(json.dumps(data, indent=2), file=out)
    else:
        print(text, file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
