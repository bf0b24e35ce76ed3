"""Command-line frontend: verification batteries and branch export."""

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from . import params as _params
from .bounds import case_ball, check_contraction
from .certificate import Certificate, CheckResult, timed
from .errors import ConvergenceError, DomainError, Inconclusive, InvalidRegime
from .globalchecks import ASSUMPTIONS, check_nofold, check_omega_window, check_uniqueness_nbhd, check_wright
from .operators import closed_forms, verify_opnorms

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_NONCONVERGED, EXIT_USAGE = 0, 1, 2, 3, 64
OPNORM_WIDTH = 1e-12

CONTRACTION_CASES = {"contraction-a": "bigbox-a", "contraction-b": "bigbox-b", "tight": "tight"}
TARGETS = ("all", "contraction-a", "contraction-b", "tight", "wright", "nofold", "uniqueness",
           "opnorms", "omega-window")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def opnorm_checks():
    table = verify_opnorms()
    ref = closed_forms()
    pairs = [
        ("opnorms.Uhat", table.norm_Uhat, ref["norm_Uhat"], "||Uhat|| = 5/4"),
        ("opnorms.UhatK", table.norm_UhatK, ref["norm_UhatK"], "||Uhat K|| = 1/sqrt(5)"),
        ("opnorms.A0star_inv", table.norm_A0star_inv, ref["norm_A0star_inv"],
         "||(A0*)^-1|| = 2/(pi sqrt(5))"),
        ("opnorms.A1A0inv", table.norm_A1A0inv, ref["norm_A1A0inv"],
         "||A1 A0^-1|| = 2 sqrt(10)/5"),
    ]
    out = []
    for name, got, want, text in pairs:
        ok = got.overlaps(want) and got.width < OPNORM_WIDTH and want.width < OPNORM_WIDTH
        out.append(CheckResult(name, bool(ok), text, (got.lo, got.hi), (want.lo, want.hi),
                               "operator-norms"))
    return out


def _contraction(table, case):
    ball, scaled = case_ball(table["cases"][case])
    return check_contraction(ball, scaled, case).checks


def _battery(name, table):
    """Run one named battery; module-level so it can be shipped to workers."""
    if name in CONTRACTION_CASES:
        return timed(_contraction, table, CONTRACTION_CASES[name])
    if name == "opnorms":
        return timed(opnorm_checks)
    if name == "omega-window":
        return timed(check_omega_window, table)
    if name == "wright":
        return timed(check_wright, table)
    if name == "nofold":
        return timed(check_nofold, table)
    if name == "uniqueness":
        return timed(check_uniqueness_nbhd, table)
    raise ValueError(name)


def _components(target):
    if target == "all":
        return ["opnorms", "contraction-a", "contraction-b", "tight", "wright", "nofold",
                "uniqueness"]
    return [target]


def _run(names, table, jobs):
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(names))) as pool:
            return list(pool.map(_battery, names, [table] * len(names)))
    return [_battery(n, table) for n in names]


def build_certificate(target, table=None, is_canonical=True, jobs=1):
    if table is None:
        table = _params.canonical()
    cert = Certificate(__version__, _params.TABLE_VERSION, list(ASSUMPTIONS),
                       canonical=is_canonical, target=target)
    seen = set()
    try:
        results = _run(_components(target), table, jobs)
    except Inconclusive:
        cert.inconclusive = True
        raise
    for batch in results:
        for check in batch:
            # prerequisite batteries repeat across targets; keep the first copy
            if check.name not in seen:
                seen.add(check.name)
                cert.checks.append(check)
    return cert


def _radius_overrides(args):
    given = [args.r_alpha, args.r_omega, args.r_c]
    if all(v is None for v in given):
        return None
    if args.target not in CONTRACTION_CASES:
        raise DomainError("--r-alpha/--r-omega/--r-c apply only to contraction-a, "
                          "contraction-b and tight")
    case = _params.CANONICAL["cases"][CONTRACTION_CASES[args.target]]
    r = [v if v is not None else old for v, old in zip(given, case["r"])]
    for v in r:
        if float(v) <= 0:
            raise DomainError("radii must be strictly positive")
    return {"cases": {CONTRACTION_CASES[args.target]: {"r": r}}}


def _default_jobs():
    raw = os.environ.get("WRIGHTCERT_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args, parser):
    try:
        overrides = _radius_overrides(args)
        table, is_canonical = _params.load(args.params, overrides)
    except (DomainError, OSError, ValueError) as exc:
        parser.error(str(exc))
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        cert = build_certificate(args.target, table, is_canonical, args.jobs)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (DomainError, InvalidRegime) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = cert.to_text() if args.text else cert.to_json(include_metadata=not args.no_metadata)
    _emit(out, args.output)
    if not cert.overall:
        names = ", ".join(c.name for c in cert.failed())
        print(f"failed checks: {names}", file=sys.stderr)
    return EXIT_PASS if cert.overall else EXIT_FAIL


def cmd_branch(args, parser):
    from . import oracle

    if not 0 < args.eps_max <= 0.12:
        parser.error("--eps-max must lie in (0, 0.12]")
    if args.points < 1:
        parser.error("--points must be positive")
    if args.modes < 8:
        parser.error("--modes must be at least 8")
    grid = oracle.default_grid(args.eps_max, args.points)
    points, failed = [], []
    prev = None
    for eps in grid:
        try:
            pts = oracle.continue_branch([eps], args.modes, seed=prev)
        except ConvergenceError:
            failed.append(eps)
            continue
        points.extend(pts)
        prev = pts[-1].state
    if failed:
        print("non-converged eps: " + ", ".join(repr(e) for e in failed), file=sys.stderr)
        return EXIT_NONCONVERGED
    _emit(oracle.branch_csv(points), args.output)
    return EXIT_PASS


def make_parser():
    p = _Parser(prog="wrightcert", description="Certified checks for the Hopf branch of "
                "Wright's equation.")
    p.add_argument("--version", action="version", version=f"wrightcert {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a verification battery and emit a certificate")
    v.add_argument("target", choices=TARGETS)
    v.add_argument("--output", "-o")
    v.add_argument("--params", help="JSON file overriding the parameter table")
    fmt = v.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON certificate (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable summary")
    v.add_argument("--no-metadata", action="store_true",
                   help="omit the timing section from the JSON certificate")
    v.add_argument("--jobs", "-j", type=int, default=_default_jobs())
    v.add_argument("--r-alpha")
    v.add_argument("--r-omega")
    v.add_argument("--r-c")

    b = sub.add_parser("branch", help="continue the branch numerically and write CSV")
    b.add_argument("--eps-max", type=float, default=0.1)
    b.add_argument("--points", type=int, default=100)
    b.add_argument("--modes", type=int, default=32)
    b.add_argument("--output", "-o")
    return p


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args, parser)
    return cmd_branch(args, parser)


if __name__ == "__main__":
    sys.exit(main())
