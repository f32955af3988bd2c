"""Command line driver: scans, the full reproduction run and cache management.

Exit status is 0 when every machine-checked assertion passes, 1 when some
assertion fails and 2 for configuration errors (bad type, cutoff exceeded,
unwritable output).  OBSTRUCTED verdicts are findings and never change the
exit status.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .analysis import (
    OBSTRUCTED,
    Lab,
    ScenarioResult,
    emit_report,
    lift_counterexample,
    scan_type,
    scenario_b2,
    scenario_d4,
    scenario_g2,
    scenario_sln,
)
from .cache import ENV_VAR, TableCache
from .linalg import set_verification_prime
from .rootsys import RootSystemError, RootSystemSpec
from .steinberg import DEFAULT_BOUND, DEFAULT_SAMPLES, DEFAULT_SEED, SampleConfig
from .weyl import DEFAULT_CUTOFF, WeylError, weyl_order

log = logging.getLogger("orbvar")

LIFT_TYPES = ("B3", "C3", "F4", "D5")
SLN_RANGE = range(2, 7)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    family: str | None = None
    rank: int | None = None
    seed: int = DEFAULT_SEED
    samples: int = DEFAULT_SAMPLES
    coeff_bound: int = DEFAULT_BOUND
    cutoff: int = DEFAULT_CUTOFF
    out: Path = field(default_factory=lambda: Path("orbvar-out"))
    cache: Path | None = None
    prime: int | None = None

    @property
    def type_name(self) -> str:
        if self.family is None or self.rank is None:
            raise ConfigError("--family and --rank are required")
        return f"{self.family.upper()}{self.rank}"

    def validate_type(self) -> str:
        name = self.type_name
        try:
            spec = RootSystemSpec.parse(name)
            spec.validate()
        except RootSystemError as exc:
            raise ConfigError(f"invalid type {name}: {exc}") from exc
        order = weyl_order(spec.family, spec.rank)
        if order > self.cutoff:
            raise ConfigError(f"|W({name})| = {order} exceeds the enumeration cutoff {self.cutoff}")
        return name

    def sample_config(self) -> SampleConfig:
        try:
            return SampleConfig(seed=self.seed, k=self.samples, bound=self.coeff_bound)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def table_cache(self) -> TableCache | None:
        if self.cache is not None:
            return TableCache(self.cache)
        if os.environ.get(ENV_VAR):
            return TableCache()
        return None

    def lab(self) -> Lab:
        if self.prime is not None:
            set_verification_prime(self.prime)
        return Lab(self.sample_config(), cutoff=self.cutoff, cache=self.table_cache())


def write_report(results: Sequence[ScenarioResult], config: RunConfig, lab: Lab, stem: str) -> tuple[Path, Path]:
    text, md = emit_report(results, seed=config.seed, convention=lab.stamp)
    try:
        config.out.mkdir(parents=True, exist_ok=True)
        jpath, mpath = config.out / f"{stem}.json", config.out / f"{stem}.md"
        jpath.write_text(text)
        mpath.write_text(md)
    except OSError as exc:
        raise ConfigError(f"cannot write report to {config.out}: {exc}") from exc
    return jpath, mpath


def _summarise(results: Sequence[ScenarioResult]) -> None:
    for r in results:
        fails = [a.id for a in r.assertions if a.status != "pass"]
        n_obs = sum(f.get("verdict") == OBSTRUCTED for f in r.findings)
        state = "PASS" if r.passed else "FAIL"
        extra = f", {n_obs} OBSTRUCTED" if n_obs else ""
        print(f"{state} {r.scenario}: {len(r.assertions)} assertions{extra}")
        for f in fails:
            print(f"    failed: {f}")


def cmd_scan(config: RunConfig) -> int:
    name = config.validate_type()
    lab = config.lab()
    result = scan_type(lab, name)
    jpath, _ = write_report([result], config, lab, f"scan-{name}")
    _summarise([result])
    print(f"report: {jpath}")
    return 0 if result.passed else 1


def reproduce_results(lab: Lab) -> list[ScenarioResult]:
    results = [scenario_b2(lab), scenario_g2(lab), scenario_d4(lab)]
    results += [lift_counterexample(lab, t) for t in LIFT_TYPES]
    results += [scenario_sln(lab, n) for n in SLN_RANGE]
    return results


def cmd_reproduce(config: RunConfig) -> int:
    lab = config.lab()
    results = reproduce_results(lab)
    jpath, _ = write_report(results, config, lab, "reproduce")
    _summarise(results)
    print(f"report: {jpath}")
    return 0 if all(r.passed for r in results) else 1


def cmd_cache(config: RunConfig, action: str) -> int:
    cache = config.table_cache() or TableCache()
    if action == "list":
        for e in cache.entries():
            if "error" in e:
                print(f"{e['file']}: unreadable ({e['error']})")
            else:
                state = "current" if e["current"] else "stale"
                print(f"{e['file']}: {e['kind']} {e['family']}{e['rank']} v{e['version']} {state}")
        return 0
    if action == "clear":
        name = config.type_name if config.family else None
        print(f"removed {cache.invalidate(name)} entries from {cache.directory}")
        return 0
    name = config.validate_type()
    lab = Lab(config.sample_config(), cutoff=config.cutoff, cache=cache)
    lab.weyl(name)
    lab.algebra(name)
    print(f"{name}: cache at {cache.directory} ({cache.hits} hits, {cache.misses} built)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", help="Cartan type letter A-G")
    common.add_argument("--rank", type=int)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="generic samples per element")
    common.add_argument("--coeff-bound", type=int, default=DEFAULT_BOUND)
    common.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF, help="largest |W| to enumerate")
    common.add_argument("--out", type=Path, default=Path("orbvar-out"), help="report directory")
    common.add_argument("--cache", type=Path, default=None, help=f"cache directory (or set {ENV_VAR})")
    common.add_argument("--prime", type=int, default=None, help="prime for a logged modular rank cross-check")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="orbvar", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"orbvar {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("scan", parents=[common], help="tau-obstruction scan of one type")
    sub.add_parser("reproduce", parents=[common], help="run every counterexample and support scenario")
    c = sub.add_parser("cache", parents=[common], help="build, list or clear cached tables")
    c.add_argument("action", choices=["build", "list", "clear"])
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    config = RunConfig(
        family=args.family, rank=args.rank, seed=args.seed, samples=args.samples,
        coeff_bound=args.coeff_bound, cutoff=args.cutoff, out=args.out, cache=args.cache, prime=args.prime,
    )
    try:
        if args.command == "scan":
            return cmd_scan(config)
        if args.command == "reproduce":
            return cmd_reproduce(config)
        return cmd_cache(config, args.action)
    except (ConfigError, WeylError) as exc:
        print(f"orbvar: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
