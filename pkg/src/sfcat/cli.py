"""Batch driver: ``sfcat verify-category | verify-blocks | characters | ope``.

Every run writes a JSON report.  Exit codes: 0 all checks pass, 1 a
mathematical check failed, 2 bad configuration, 3 a numeric check ran out of
truncation budget.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .report import FAIL, TRUNCATION, RunReport, _plain

log = logging.getLogger("sfcat")

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_TRUNCATION = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    N: int = 1
    cutoff: int | None = None
    tol: float | None = None
    xs: tuple = (0.25, 0.3)
    taus: tuple = ()
    seed: int = 0
    out: str | None = None
    jobs: int = 1
    modules: list = field(default_factory=list)
    corrupt_phi: bool = False

    def validate(self) -> None:
        if self.N < 1:
            raise ConfigError("--n-pairs must be at least 1")
        if self.cutoff is not None and self.cutoff < 0:
            raise ConfigError("--cutoff must be non-negative")
        if self.tol is not None and not self.tol > 0:
            raise ConfigError("--tol must be positive")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        for x in self.xs:
            if not 0 < x < 1:
                raise ConfigError("--x samples must lie in (0, 1)")
        for t in self.taus:
            if t.imag <= 0:
                raise ConfigError("--tau must lie in the upper half plane")


def _floats(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"cannot parse number list {text!r}") from exc


def _complexes(text: str) -> tuple:
    try:
        return tuple(complex(v.strip().replace("i", "j")) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"cannot parse tau list {text!r}") from exc


def _load_modules(path: str | None) -> list:
    if not path:
        return []
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read module file: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("modules", [data])
    if not isinstance(data, list):
        raise ConfigError("module file must hold an object or a list of objects")
    return data


def build_config(args) -> RunConfig:
    cfg = RunConfig(
        N=args.n_pairs, cutoff=args.cutoff, tol=args.tol,
        xs=_floats(args.x) if args.x else (0.25, 0.3),
        taus=_complexes(args.tau) if args.tau else (),
        seed=args.seed, out=args.out, jobs=args.jobs,
        modules=_load_modules(args.modules),
        corrupt_phi=getattr(args, "corrupt_phi", False))
    cfg.validate()
    return cfg


def _check_modules(cfg: RunConfig) -> None:
    """Reject malformed custom modules before any check runs."""
    if not cfg.modules:
        return
    from .liealg import LieData
    from .modzoo import module_from_json
    lie = LieData.symplectic(cfg.N)
    for spec in cfg.modules:
        try:
            module_from_json(lie, spec)
        except Exception as exc:  # any malformed input is a configuration problem
            raise ConfigError(f"invalid module {spec.get('name', '?') if isinstance(spec, dict) else spec!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# commands

def cmd_verify_category(cfg: RunConfig) -> RunReport:
    from .suites import category_suite
    _check_modules(cfg)
    recs = category_suite(cfg.N, cfg.seed, cfg.modules, cfg.corrupt_phi, jobs=cfg.jobs)
    return RunReport("verify-category", asdict(cfg), recs)


def cmd_verify_blocks(cfg: RunConfig) -> RunReport:
    from .suites import blocks_suite
    _check_modules(cfg)
    M = 12 if cfg.cutoff is None else cfg.cutoff
    tol = 1e-6 if cfg.tol is None else cfg.tol
    recs = blocks_suite(cfg.N, M, cfg.xs, tol, cfg.modules, jobs=cfg.jobs)
    return RunReport("verify-blocks", asdict(cfg), recs)


def cmd_characters(cfg: RunConfig) -> RunReport:
    from .suites import character_tables, characters_suite
    tau = cfg.taus[0] if cfg.taus else 1j
    tol = 1e-8 if cfg.tol is None else cfg.tol
    cutoff = 10 if cfg.cutoff is None else cfg.cutoff
    recs = characters_suite(cfg.N, tau, 60, tol, cfg.seed, cutoff, jobs=cfg.jobs)
    tables = character_tables(cfg.N, cutoff)
    rep = RunReport("characters", asdict(cfg), recs,
                    {"characters": {k: v.to_json() for k, v in tables.items()}})
    for name, series in tables.items():
        print(f"chi[{name}] = {series.to_text()}")
    return rep


def cmd_ope(cfg: RunConfig) -> RunReport:
    from .ope import mu_hat_ope, structure_constants, structure_constants_named
    from .suites import make_category, ope_suite
    cat, _ = make_category(cfg.N)
    recs = ope_suite(cfg.N)
    extras = {"structure_constants": structure_constants(cat)}
    if cfg.N == 1:
        extras["structure_constants_named"] = structure_constants_named(cat)
        extras["omega_omega_ope"] = {k: [c.to_text() for c in v]
                                     for k, v in mu_hat_ope(cat).items()}
    print(json.dumps(_plain(extras), indent=2))
    return RunReport("ope", asdict(cfg), recs, extras)


COMMANDS = {"verify-category": cmd_verify_category, "verify-blocks": cmd_verify_blocks,
            "characters": cmd_characters, "ope": cmd_ope}


def exit_code(report: RunReport) -> int:
    status = report.status
    if status == FAIL:
        return EXIT_FAIL
    if status == TRUNCATION:
        return EXIT_TRUNCATION
    return EXIT_PASS


def default_out(command: str, out: str | None) -> Path:
    if out:
        return Path(out)
    root = Path(os.environ.get("SFCAT_REPORT_DIR", "sfcat-reports"))
    return root / f"{command}.json"


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-pairs", type=int, default=1, help="number of symplectic fermion pairs N")
    common.add_argument("--cutoff", type=int, default=None, help="Fock truncation grade M")
    common.add_argument("--tol", type=float, default=None, help="numeric tolerance")
    common.add_argument("--x", default=None, help="comma separated x samples in (0, 1)")
    common.add_argument("--tau", default=None, help="comma separated tau samples, e.g. 1j,0.1+1j")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="report path (default $SFCAT_REPORT_DIR/<command>.json)")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for independent sections")
    common.add_argument("--modules", default=None, help="JSON file with extra h-modules")
    common.add_argument("-v", "--verbose", action="store_true")
    parser = argparse.ArgumentParser(prog="sfcat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "verify-category":
            p.add_argument("--corrupt-phi", action="store_true",
                           help="drop the pi^-N factor in phi (mutation demonstration)")
    return parser


def _summary(report: RunReport) -> str:
    counts: dict = {}
    for r in report.records:
        counts[r.status] = counts.get(r.status, 0) + 1
    return ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = build_config(args)
        start = time.perf_counter()
        report = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    report.config["elapsed_s"] = round(time.perf_counter() - start, 3)
    path = report.write(default_out(args.command, cfg.out))
    for rec in report.records:
        if not rec.verdict:
            print(f"{rec.status.upper()}: {rec.check} {json.dumps(rec.to_json()['inputs'])}",
                  file=sys.stderr)
            log.info("detail: %s", json.dumps(rec.to_json()["detail"])[:2000])
    print(f"{args.command}: {report.status} ({_summary(report)}) -> {path}")
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
