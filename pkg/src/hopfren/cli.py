"""Command-line front end: ``hopfren generate | birkhoff | check``.

Exit codes: 0 success, 1 I/O failure, 2 loop order out of range, 3 missing
generator values, 4 Birkhoff reconstruction failure, 5 check failure,
64 usage error.  Human-readable messages go to stderr; results go to files
under ``--out``.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__, graphs, groups, hopf, io

EXIT_OK, EXIT_IO, EXIT_LOOPS, EXIT_MISSING, EXIT_RECONSTRUCT, EXIT_CHECK = 0, 1, 2, 3, 4, 5
EXIT_USAGE = 64

CHECKS = ("hopf-axioms", "thm2", "thm3", "eq13", "eq6", "laws17-18", "foliation")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    max_loops: int = 2
    truncation_order: int | None = None
    convention_flags: groups.ConventionFlags = field(default_factory=lambda: groups.FROZEN_FLAGS)
    seed: int = 0
    output_dir: Path = Path(".")

    def __post_init__(self):
        if self.truncation_order is None:
            object.__setattr__(self, "truncation_order", 2 * self.max_loops + 1)
        if self.truncation_order < 2 * self.max_loops + 1:
            raise UsageError(f"--order must be at least 2*max_loops+1 = {2 * self.max_loops + 1}")

    def check_loops(self):
        if not 1 <= self.max_loops <= graphs.MAX_LOOPS:
            raise graphs.LoopOrderTooLarge(
                f"max_loops={self.max_loops} outside 1..{graphs.MAX_LOOPS}")

    def to_dict(self) -> dict:
        return {"max_loops": self.max_loops,
                "truncation_order": self.truncation_order,
                "convention_flags": self.convention_flags.to_dict(),
                "seed": self.seed}


def _log(msg: str):
    print(msg, file=sys.stderr)


def _envelope(config: RunConfig, body: dict) -> dict:
    out = dict(body)
    out["config"] = config.to_dict()
    out["version"] = __version__
    return out


# -- generate ----------------------------------------------------------------------

def cmd_generate(config: RunConfig) -> int:
    config.check_loops()
    entries = graphs.catalog(config.max_loops)
    text = io.catalog_text(entries, config.max_loops, config.convention_flags.multiplicities)
    path = io.atomic_write(config.output_dir / "catalog.tsv", text)
    _log(f"wrote {len(entries)} generators to {path}")
    return EXIT_OK


# -- birkhoff ----------------------------------------------------------------------

def _presentation_for(algebra: str, config: RunConfig, keys):
    if algebra == "phi3":
        config.check_loops()
        return graphs.build_presentation(config.max_loops, config.convention_flags.multiplicities)
    n_max = max((int(k[len("alpha"):]) for k in keys
                 if k.startswith("alpha") and k[len("alpha"):].isdigit()), default=2)
    return groups.build_hdiff(n_max, config.convention_flags.orientation)


def cmd_birkhoff(config: RunConfig, character_file) -> int:
    chi, algebra, order = io.read_character(character_file)
    h = _presentation_for(algebra, config, chi.values)
    missing = [k for k in h.generators if k not in chi.values]
    unknown = sorted(set(chi.values) - set(h.degrees))
    if missing or unknown:
        if missing:
            _log(f"missing values for {len(missing)} generators, e.g. {missing[0]}")
        if unknown:
            _log(f"values for unknown generators, e.g. {unknown[0]}")
        return EXIT_MISSING
    minus, plus = hopf.birkhoff_decompose(h, chi)
    rebuilt = hopf.convolve(h, hopf.inverse(h, minus), plus)
    bad = [k for k in h.generators if rebuilt.values[k] != chi.values[k]]
    out = config.output_dir
    io.write_character(out / "counterterm.json", minus, algebra, order)
    io.write_character(out / "renormalized.json", plus, algebra, order)
    status = {"check": "birkhoff", "generators": len(h.generators),
              "reconstruction": "fail" if bad else "pass",
              "first_failure": bad[0] if bad else None}
    io.write_report(out / "birkhoff-report.json", _envelope(config, status))
    if bad:
        _log(f"reconstruction failed at {bad[0]}")
        return EXIT_RECONSTRUCT
    _log(f"decomposed {len(h.generators)} generators into {out}")
    return EXIT_OK


# -- check -------------------------------------------------------------------------

def _characters(config: RunConfig, h, files):
    given = []
    for f in files:
        chi, _, _ = io.read_character(f)
        chi = io.rational_character(chi)
        missing = [k for k in h.generators if k not in chi.values]
        if missing:
            raise KeyError(missing[0])
        given.append(chi)
    rng = random.Random(config.seed)
    while len(given) < 2:
        given.append(groups.random_character(h, rng))
    return given


def run_check(which: str, config: RunConfig, character_files=()) -> dict:
    """Run one named check (or ``all``) and return its report."""
    if which == "all":
        reports = [run_check(name, config, character_files) for name in CHECKS]
        failed = next((r for r in reports if r["status"] != "pass"), None)
        return groups.report("all", config.convention_flags, config.truncation_order,
                             None if failed is None else dict(failed["first_failure"] or {},
                                                              check=failed["check"]),
                             reports=reports)
    flags = config.convention_flags
    config.check_loops()
    order = config.truncation_order
    h = graphs.build_presentation(config.max_loops, flags.multiplicities)
    if which == "hopf-axioms":
        rng = random.Random(config.seed)
        hdiff = groups.build_hdiff(max(order, 2), flags.orientation)
        parts = {"phi3": hopf.check_axioms(h, rng), "hdiff": hopf.check_axioms(hdiff, rng)}
        failed = next((k for k, r in parts.items() if r["status"] != "pass"), None)
        failure = None
        if failed:
            failure = {"order": None, "lhs": f"{failed}: {parts[failed]['first_failure']}",
                       "rhs": "axiom identity"}
        return groups.report(which, flags, order, failure, presentations=parts)
    z = groups.build_z_series(config.max_loops, flags.sigma)
    if which == "foliation":
        return groups.check_foliation(z, flags)
    if which == "thm2":
        n_max = min(order, groups.effective_coupling(z).order)
        hdiff = groups.build_hdiff(n_max, flags.orientation)
        return groups.check_psi_morphism(h, hdiff, z, n_max, flags)
    gamma, gamma2 = _characters(config, h, character_files)
    if which == "thm3":
        return groups.check_scheme_morphism(h, gamma, gamma2, z, flags, order)
    if which == "eq13":
        return groups.check_wave_function(h, gamma, z, flags, order)
    if which == "eq6":
        return groups.check_coupling_invariance(h, gamma, z, flags, order)
    if which == "laws17-18":
        return groups.check_transformation_laws(h, gamma, z, flags, order)
    raise UsageError(f"unknown check {which!r}")


def cmd_check(config: RunConfig, which: str, character_files=()) -> int:
    try:
        rep = run_check(which, config, character_files)
    except groups.NonScalarCoefficient as exc:
        rep = groups.report(which, config.convention_flags, config.truncation_order,
                            {"order": None, "lhs": str(exc), "rhs": "scalar"})
    path = io.write_report(config.output_dir / f"check-{which}.json", _envelope(config, rep))
    _log(f"{which}: {rep['status']} (report: {path})")
    return EXIT_OK if rep["status"] == "pass" else EXIT_CHECK


# -- argument parsing --------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _log(f"{self.prog}: error: {message}")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--max-loops", type=int, default=2)
    common.add_argument("--order", type=int, default=None,
                        help="truncation order in g (default 2*max_loops+1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--flags", default=groups.FROZEN_FLAGS.to_string(),
                        help="comma list from op|direct, mult|nomult, sigma+|sigma-")
    common.add_argument("--out", type=Path, default=Path("."))

    parser = _Parser(prog="hopfren", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("generate", parents=[common], help="write the graph catalog")
    b = sub.add_parser("birkhoff", parents=[common], help="Birkhoff-decompose a character file")
    b.add_argument("character_file", type=Path)
    c = sub.add_parser("check", parents=[common], help="run identity checks")
    c.add_argument("which", choices=CHECKS + ("all",))
    c.add_argument("--character", type=Path, action="append", default=[],
                   help="rational character file (up to two; rest are random)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        flags = groups.ConventionFlags.from_string(args.flags)
        config = RunConfig(args.max_loops, args.order, flags, args.seed, args.out)
        if getattr(args, "character", None) and len(args.character) > 2:
            raise UsageError("at most two --character files")
    except (ValueError, UsageError) as exc:
        _log(f"hopfren: error: {exc}")
        return EXIT_USAGE
    try:
        if args.command == "generate":
            return cmd_generate(config)
        if args.command == "birkhoff":
            return cmd_birkhoff(config, args.character_file)
        return cmd_check(config, args.which, args.character)
    except graphs.LoopOrderTooLarge as exc:
        _log(f"hopfren: {exc}")
        return EXIT_LOOPS
    except (KeyError, hopf.UnknownGenerator) as exc:
        _log(f"hopfren: missing generator value {exc}")
        return EXIT_MISSING
    except (OSError, io.CharacterFileError) as exc:
        _log(f"hopfren: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
