"""Batch verification harness.

    qogz verify --config campaign.cfg [--suite S] [--seed N] [--report PATH] [--max-group-size N] [--jobs N]

The config is an INI file::

    [campaign]
    seed = 1
    search_radius = 6
    report = report.txt

    [suite invariance]
    specs =
        r=1,2 m=2 p=2
        r=2,2 m=4 p=2

Exit status: 0 when every asserted check passes, 1 when one fails, 2 on usage or config errors.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .ogz import (FAIL, INFO, PASS, CheckRecord, verify_galois_support, verify_heisenberg, verify_invariance,
                  verify_serre_and_cross)
from .reflection import DEFAULT_MAX_GROUP_SIZE, AlgebraSpec, GroupTooLargeError, SpecError, group_order

log = logging.getLogger("qogz")

SUITES = ("invariance", "galois-support", "gl-relations", "heisenberg", "noether-decomposition",
          "psi-equivariance", "parameters")
HEADER = "STATUS\tsuite\tspec\tcheck-id\twitness"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Case:
    suite: str
    spec: str
    options: tuple = ()


@dataclass
class Campaign:
    cases: list[Case] = field(default_factory=list)
    seed: int = 0
    search_radius: int = 6
    report: str | None = None


def parse_spec(text: str, suite: str = "") -> tuple:
    """Parse "r=1,2 m=2 p=2" into an AlgebraSpec or "n=3 m=4 p=2" into an (m, p, n) triple."""
    fields = {}
    for tok in text.split():
        if "=" not in tok:
            raise ConfigError(f"bad spec token {tok!r} in {text!r}")
        key, _, val = tok.partition("=")
        if key in fields:
            raise ConfigError(f"duplicate key {key!r} in {text!r}")
        fields[key] = val
    try:
        m = int(fields.pop("m"))
        p = int(fields.pop("p"))
        if "r" in fields:
            r = tuple(int(x) for x in fields.pop("r").split(","))
            out = AlgebraSpec(r, m, p)
        elif "n" in fields:
            n = int(fields.pop("n"))
            if n < 1 or m < 1 or p < 1 or m % p:
                raise SpecError(f"need n >= 1 and p | m; got {text!r}")
            out = (m, p, n)
        else:
            raise ConfigError(f"spec {text!r} needs r=... or n=...")
    except KeyError as exc:
        raise ConfigError(f"spec {text!r} is missing {exc.args[0]}") from None
    except SpecError as exc:
        raise ConfigError(str(exc)) from None
    except ValueError as exc:
        raise ConfigError(f"bad spec {text!r}: {exc}") from None
    if fields:
        raise ConfigError(f"unknown keys {sorted(fields)} in {text!r}")
    return out


def _spec_str(spec) -> str:
    if isinstance(spec, AlgebraSpec):
        return str(spec)
    m, p, n = spec
    return f"n={n} m={m} p={p}"


def load_campaign(text: str) -> Campaign:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from None
    camp = Campaign()
    for section in cp.sections():
        sec = cp[section]
        if section == "campaign":
            try:
                camp.seed = sec.getint("seed", 0)
                camp.search_radius = sec.getint("search_radius", 6)
            except ValueError as exc:
                raise ConfigError(f"[campaign]: {exc}") from None
            camp.report = sec.get("report")
            continue
        kind, _, name = section.partition(" ")
        if kind != "suite" or name not in SUITES:
            raise ConfigError(f"unknown section [{section}]; suites are {', '.join(SUITES)}")
        lines = [ln.strip() for ln in sec.get("specs", "").splitlines() if ln.strip()]
        if not lines:
            raise ConfigError(f"[{section}] has no specs")
        opts = tuple(sorted((k, v) for k, v in sec.items() if k != "specs"))
        for line in lines:
            spec = parse_spec(line, name)
            if name in ("noether-decomposition",) and isinstance(spec, AlgebraSpec):
                raise ConfigError(f"[{section}] expects n=... specs, got {line!r}")
            if name in ("invariance", "galois-support", "gl-relations", "heisenberg", "psi-equivariance") \
                    and not isinstance(spec, AlgebraSpec):
                raise ConfigError(f"[{section}] expects r=... specs, got {line!r}")
            if name == "heisenberg" and spec.r != (1, 1):
                raise ConfigError(f"[{section}] only applies to r=1,1, got {line!r}")
            camp.cases.append(Case(name, _spec_str(spec), opts))
    return camp


def run_case(case: Case, seed: int, radius: int, max_group_size: int) -> list[CheckRecord]:
    from .noether import (eigenspace_decompose, psi_iso_check, random_invariant, reconstruct,
                          weyl_field_parameters, QuantumTorus)
    from .reflection import is_invariant

    spec = parse_spec(case.spec)
    opts = dict(case.options)
    name = case.suite
    if name == "invariance":
        return verify_invariance(spec)
    if name == "galois-support":
        return verify_galois_support(spec, radius)
    if name == "gl-relations":
        return verify_serre_and_cross(spec)
    if name == "heisenberg":
        return verify_heisenberg(spec, opts.get("relations", "literal"))
    if name == "psi-equivariance":
        out = []
        for k in range(1, spec.n):
            out.extend(psi_iso_check(k, spec))
        return out
    if name == "noether-decomposition":
        m, p, n = spec
        samples = int(opts.get("samples", 50))
        rng = random.Random(f"{seed}:{case.spec}")
        torus = QuantumTorus(n, m)
        out = []
        for s in range(samples):
            f = random_invariant(torus, p, rng, max_group_size)
            comps = eigenspace_decompose(f, m, p, n)
            rec = reconstruct(comps, m, p, n)
            ok = rec == f
            out.append(CheckRecord(name, case.spec, f"sample{s:03d} reconstruct", PASS if ok else FAIL,
                                   "" if ok else str(rec - f)))
            bad = [k for k, c in enumerate(comps) if not is_invariant(c, (m, 1, n))]
            out.append(CheckRecord(name, case.spec, f"sample{s:03d} components G({m},1,{n})-invariant",
                                   FAIL if bad else PASS, f"components {bad}" if bad else ""))
        return out
    if name == "parameters":
        if isinstance(spec, AlgebraSpec):
            params = weyl_field_parameters("fraction-field", spec)
            want = sum(spec.r[:-1])
            kind = "fraction-field"
        else:
            params = weyl_field_parameters("invariant-field", spec)
            want = spec[2]
            kind = "invariant-field"
        ok = params.pairs == want
        return [CheckRecord(name, case.spec, f"{kind} pair count", PASS if ok else FAIL,
                            "" if ok else f"{params.pairs} != {want}"),
                CheckRecord(name, case.spec, f"{kind} parameters", INFO, str(params))]
    raise ConfigError(f"unknown suite {name!r}")


def _clean(text: str) -> str:
    return " ".join(text.split())


def render_report(records: Sequence[CheckRecord]) -> str:
    lines = [HEADER]
    for r in sorted(records, key=lambda r: (r.suite, r.spec, r.check_id, r.status, r.witness)):
        lines.append("\t".join([r.status, r.suite, r.spec, _clean(r.check_id), _clean(r.witness)]))
    return "\n".join(lines) + "\n"


def _check_feasible(camp: Campaign, max_group_size: int):
    for case in camp.cases:
        if case.suite == "noether-decomposition":
            m, p, n = parse_spec(case.spec)
            size = group_order(m, p, n)
            if size > max_group_size:
                raise GroupTooLargeError(f"{case.spec}: |G| = {size} exceeds --max-group-size {max_group_size}")


def _run(args) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            camp = load_campaign(fh.read())
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.suite:
        if args.suite not in SUITES:
            print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
            return 2
        camp.cases = [c for c in camp.cases if c.suite == args.suite]
    seed = camp.seed if args.seed is None else args.seed
    try:
        _check_feasible(camp, args.max_group_size)
    except GroupTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    records: list[CheckRecord] = []
    work = [(c, seed, camp.search_radius, args.max_group_size) for c in camp.cases]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for recs in pool.map(_run_star, work):
                records.extend(recs)
    else:
        for w in work:
            log.info("running %s %s", w[0].suite, w[0].spec)
            records.extend(_run_star(w))
    text = render_report(records)
    report = args.report or camp.report
    if report:
        with open(report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = sum(r.status == FAIL for r in records)
    print(f"{len(records)} checks, {failed} failed", file=sys.stderr)
    return 1 if failed else 0


def _run_star(w):
    return run_case(*w)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qogz", description="Verification harness for quantum OGZ algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--config", required=True, help="campaign INI file")
    v.add_argument("--suite", help="run only this suite")
    v.add_argument("--seed", type=int, help="override the campaign seed")
    v.add_argument("--report", help="write the report here instead of stdout")
    v.add_argument("--max-group-size", type=int, default=DEFAULT_MAX_GROUP_SIZE)
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
