"""Command-line entry point: ``precy <command> ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad input,
3 the bracket axioms and the Maurer-Cartan side disagree.
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from precy import io
from precy.ainfinity import check_cyclic_invariance, check_maurer_cartan
from precy.algebra import check_associativity, check_m2_cyclicity, check_trivial_extension_associativity, check_unit
from precy.double_poisson import (
    bracket_from_m3,
    check_antisymmetry,
    check_double_jacobi,
    check_leibniz_inner,
    check_leibniz_outer,
    check_polyderivation,
    m3_from_bracket,
    verify_correspondence,
)
from precy.errors import DomainError, PrecyError, SchemaError
from precy.mcterms import all_mc5_equations
from precy.repspaces import (
    check_coordinate_antisymmetry,
    check_gl_equivariance,
    check_ideal_compatibility,
    check_jacobi_at_points,
    sample_rep_points,
    validate_rep_point,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONSISTENT = 0, 1, 2, 3


@dataclass
class JobConfig:
    command: str
    inputs: list
    fmt: str = "text"
    rng_seed: int = 0
    jobs: int = 1
    samples: int = 100
    extra: dict = field(default_factory=dict)


@dataclass
class Outcome:
    report: dict
    lines: list
    code: int
    payload: str = None


def _checks_outcome(command, reports, extra=None):
    passed = all(r.passed for r in reports)
    report = {"command": command, "passed": passed, "checks": [r.to_dict() for r in reports]}
    if extra:
        report.update(extra)
    return Outcome(report, [r.summary() for r in reports], EXIT_OK if passed else EXIT_FAIL)


def cmd_check_algebra(cfg: JobConfig):
    alg = io.load_algebra(cfg.inputs[0])
    reports = [check_associativity(alg)]
    if alg.unit is not None:
        reports.append(check_unit(alg))
    reports += [check_trivial_extension_associativity(alg), check_m2_cyclicity(alg)]
    return _checks_outcome("check-algebra", reports, {"algebra": alg.name})


def cmd_check_bracket(cfg: JobConfig):
    alg = io.load_algebra(cfg.inputs[0])
    D = io.load_bracket(cfg.inputs[1], alg)
    reports = [
        check_antisymmetry(D),
        check_leibniz_outer(D),
        check_leibniz_inner(D),
        check_double_jacobi(D),
        check_polyderivation(alg, D),
    ]
    return _checks_outcome("check-bracket", reports, {"algebra": alg.name})


def cmd_to_precy(cfg: JobConfig):
    alg = io.load_algebra(cfg.inputs[0])
    D = io.load_bracket(cfg.inputs[1], alg)
    m3 = m3_from_bracket(D)
    text = io.dumps_canonical(io.m3_to_doc(m3))
    return Outcome({"command": "to-precy", "passed": True}, [], EXIT_OK, text)


def cmd_from_precy(cfg: JobConfig):
    alg = io.load_algebra(cfg.inputs[0])
    m3 = io.load_m3(cfg.inputs[1], alg.dim)
    try:
        D = bracket_from_m3(m3, alg)
    except DomainError as exc:
        report = {"command": "from-precy", "passed": False, "error": str(exc),
                  "pattern": str(exc.pattern) if exc.pattern is not None else None}
        return Outcome(report, [f"FAIL  from-precy  {exc}"], EXIT_FAIL)
    text = io.dumps_canonical(io.bracket_to_doc(D))
    return Outcome({"command": "from-precy", "passed": True}, [], EXIT_OK, text)


def cmd_check_precy(cfg: JobConfig):
    alg = io.load_algebra(cfg.inputs[0])
    m3 = io.load_m3(cfg.inputs[1], alg.dim)
    cyc = check_cyclic_invariance(alg, m3)
    mc = check_maurer_cartan(alg, m3, jobs=cfg.jobs)
    passed = cyc.passed and all(r.passed for r in mc.values())
    report = {
        "command": "check-precy",
        "passed": passed,
        "cyclicity": cyc.to_dict(),
        "maurer_cartan": [mc[k].to_dict() for k in sorted(mc)],
        "evaluated": {f"MC{k}": mc[k].evaluated for k in sorted(mc)},
    }
    lines = [cyc.summary()] + [mc[k].summary() for k in sorted(mc)]
    return Outcome(report, lines, EXIT_OK if passed else EXIT_FAIL)


def cmd_correspondence(cfg: JobConfig):
    alg = io.load_algebra(cfg.inputs[0])
    D = io.load_bracket(cfg.inputs[1], alg)
    rep = verify_correspondence(alg, D, jobs=cfg.jobs)
    report = {"command": "correspondence", "passed": rep.consistent, **rep.to_dict()}
    lines = [r.summary() for r in rep.axioms] + [r.summary() for r in rep.mc_side]
    lines.append(f"outcome: {rep.outcome()}")
    return Outcome(report, lines, EXIT_OK if rep.consistent else EXIT_INCONSISTENT)


def cmd_rep(cfg: JobConfig):
    alg = io.load_algebra(cfg.inputs[0])
    D = io.load_bracket(cfg.inputs[1], alg)
    seeds = io.load_seeds(cfg.inputs[2], alg)
    for idx, s in enumerate(seeds):
        r = validate_rep_point(alg, s)
        if not r:
            raise SchemaError(f"seed {idx} is not a representation: {r.summary()}", f"$.seeds[{idx}]")
    n = cfg.extra["n"]
    try:
        points = sample_rep_points(alg, n, seeds, cfg.samples, cfg.rng_seed)
    except PrecyError as exc:
        raise SchemaError(str(exc), "seeds") from exc
    reports = [
        check_coordinate_antisymmetry(D, n),
        check_jacobi_at_points(D, n, points),
        check_gl_equivariance(D, n, points, cfg.extra["group_samples"], cfg.rng_seed + 1),
        check_ideal_compatibility(D, n, points),
    ]
    extra = {"n": n, "samples": cfg.samples, "rng_seed": cfg.rng_seed,
             "scope": "exact evaluation at sampled points"}
    return _checks_outcome("rep", reports, extra)


def cmd_mc_terms(cfg: JobConfig):
    arity = cfg.extra.get("arity", 5)
    if arity != 5:
        raise SchemaError("only arity 5 has m3 o m3 terms", "--arity")
    eqs = all_mc5_equations()
    rows = [e.to_dict() for e in eqs]
    pure = [r["pattern"] for r in rows if r["label"] == "pure-XX"]
    report = {"command": "mc-terms", "passed": True, "arity": 5, "rows": rows, "pure_xx": pure}
    lines = []
    for e in eqs:
        tags = sorted({f"{t.inner_type.value}/{t.outer_type.value}" for t in e.main_terms})
        lines.append(f"{str(e.pattern):<22} {e.label:<15} main={len(e.main_terms):<2} {' '.join(tags)}")
    lines.append(f"pure-XX rows: {', '.join(pure)}")
    return Outcome(report, lines, EXIT_OK)


COMMANDS = {
    "check-algebra": (cmd_check_algebra, ["algebra"]),
    "check-bracket": (cmd_check_bracket, ["algebra", "bracket"]),
    "to-precy": (cmd_to_precy, ["algebra", "bracket"]),
    "from-precy": (cmd_from_precy, ["algebra", "m3"]),
    "check-precy": (cmd_check_precy, ["algebra", "m3"]),
    "correspondence": (cmd_correspondence, ["algebra", "bracket"]),
    "rep": (cmd_rep, ["algebra", "bracket", "seeds"]),
    "mc-terms": (cmd_mc_terms, []),
}


def build_parser():
    parser = argparse.ArgumentParser(prog="precy", description="Double Poisson brackets and type-B pre-Calabi-Yau structures.")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for exhaustive loops")
    parser.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, args) in COMMANDS.items():
        p = sub.add_parser(name)
        for a in args:
            p.add_argument(a)
        if name in ("to-precy", "from-precy"):
            p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
        if name == "rep":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--samples", type=int, default=100)
            p.add_argument("--group-samples", type=int, default=2)
        if name == "mc-terms":
            p.add_argument("--arity", type=int, default=5)
    return parser


def _emit(outcome, fmt, out):
    if fmt == "json":
        out.write(io.dumps_canonical(outcome.report))
    else:
        for line in outcome.lines:
            out.write(line + "\n")


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    fn, arg_names = COMMANDS[ns.command]
    cfg = JobConfig(
        command=ns.command,
        inputs=[getattr(ns, a) for a in arg_names],
        fmt=ns.format,
        rng_seed=ns.seed,
        jobs=max(1, ns.jobs),
        samples=getattr(ns, "samples", 100),
        extra={k: getattr(ns, k) for k in ("n", "group_samples", "arity") if hasattr(ns, k)},
    )
    if cfg.extra.get("n") is not None and cfg.extra["n"] < 1:
        stderr.write("error: --n must be at least 1\n")
        return EXIT_INPUT
    try:
        outcome = fn(cfg)
    except SchemaError as exc:
        stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except PrecyError as exc:
        stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    if outcome.payload is not None:
        target = getattr(ns, "output", "-")
        if target == "-":
            stdout.write(outcome.payload)
        else:
            Path(target).write_text(outcome.payload, encoding="utf-8")
        if cfg.fmt == "json" and target != "-":
            _emit(outcome, "json", stdout)
        return outcome.code
    _emit(outcome, cfg.fmt, stdout)
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
