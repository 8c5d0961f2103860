"""Command line front end.

    hyperdyn --system builtin:cyclic_rotation(3) --check transitive
    hyperdyn --system path/to/system.cfg --verify T36,T39 --out report.json
    hyperdyn --suite default --assert

Exit codes:

    0  the command ran to completion (and, with --assert, everything held)
    1  --assert was given and a property failed, a theorem case was
       refuted, or a suite failed its coverage requirements
    2  bad command line usage
    3  invalid system or suite config (messages carry line and key)
    4  file could not be read or written
    5  the command does not apply to the system (hyperspace too large,
       non-abelian group for a theorem that assumes commutativity, ...)
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .checkers import PROPERTIES, Bounds, check, product_group_diagnostic
from .config import load_system, parse_suite
from .errors import ConfigError, HyperdynError, UnknownSystemError
from .reports import (
    case_to_dict,
    dumps,
    envelope,
    property_to_dict,
    suite_to_dict,
    system_descriptor,
)
from .shifts import Sft
from .suite import BUILTIN_SUITES, run_suite
from .theorems import THEOREMS, CaseVerdict, make_context, verify_theorem

EXIT_OK = 0
EXIT_ASSERT = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_IO = 4
EXIT_PRECONDITION = 5

DIAGNOSTICS = ("product-group",)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hyperdyn",
        description="Check chaos properties of group actions and replay the hyperspace theorems.",
    )
    p.add_argument("--system", help="config file path or builtin:name(args)")
    cmd = p.add_mutually_exclusive_group(required=True)
    cmd.add_argument("--check", metavar="PROPERTY",
                     help=f"comma-separated properties or 'all': {', '.join(PROPERTIES)}")
    cmd.add_argument("--verify", metavar="IDS", help=f"comma-separated theorem ids or 'all': {', '.join(THEOREMS)}")
    cmd.add_argument("--suite", metavar="PATH",
                     help=f"suite file, or one of: {', '.join(BUILTIN_SUITES)}")
    p.add_argument("--radius", type=int, help=f"word / shift exponent radius (default {Bounds.radius})")
    p.add_argument("--cyl-len", type=int, help=f"longest cylinder word (default {Bounds.cyl_len})")
    p.add_argument("--cap", type=int, help=f"largest base space for a hyperspace (default {Bounds.cap})")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--assert", dest="assert_", action="store_true",
                   help="exit 1 when a property fails or a theorem case is refuted")
    p.add_argument("--allow-nonabelian", action="store_true",
                   help="run abelian-only theorems anyway; results are informational")
    return p


def _split(value: str, allowed, what: str) -> list[str]:
    if value == "all":
        return list(allowed)
    items = [v.strip() for v in value.split(",") if v.strip()]
    bad = [v for v in items if v not in allowed]
    if bad or not items:
        raise ValueError(f"unknown {what}: {', '.join(bad) or value!r}")
    return items


def _run_check(system, names: list[str], bounds: Bounds) -> tuple[dict, bool]:
    results = []
    for name in names:
        if name == "product-group":
            if isinstance(system, Sft):
                raise ValueError("the product-group diagnostic needs a finite system")
            results.append(property_to_dict(product_group_diagnostic(system)))
        else:
            results.append(property_to_dict(check(system, name, bounds)))
    # the diagnostic compares two notions and never counts as a failed property
    passed = all(
        r["verdict"] in ("holds", "holds-up-to-bounds", "vacuously-holds")
        for r in results if r["property"] != "product-group-diagnostic"
    )
    return {"system": system_descriptor(system), "bounds": bounds.as_dict(), "results": results}, passed


def _run_verify(system, ids: list[str], bounds: Bounds, allow_nonabelian: bool) -> tuple[dict, bool]:
    ctx = make_context(system, bounds)
    cases = [verify_theorem(t, system, bounds, context=ctx, allow_nonabelian=allow_nonabelian) for t in ids]
    passed = all(c.verdict is not CaseVerdict.REFUTED for c in cases)
    body = {
        "system": system_descriptor(system),
        "bounds": bounds.as_dict(),
        "informational": allow_nonabelian and not isinstance(system, Sft) and not system.group.abelian,
        "results": [case_to_dict(c) for c in cases],
    }
    return body, passed


def _load_suite(source: str, bounds: Bounds, explicit_bounds: bool):
    if source in BUILTIN_SUITES:
        return BUILTIN_SUITES[source](bounds)
    with open(source, encoding="utf-8") as fh:
        text = fh.read()
    config = parse_suite(text, os.path.dirname(os.path.abspath(source)))
    if explicit_bounds:
        config.bounds = bounds
    return config


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    given = {k: v for k, v in (("radius", args.radius), ("cyl_len", args.cyl_len), ("cap", args.cap))
             if v is not None}
    try:
        bounds = Bounds(**given)
    except ValueError as exc:
        parser.error(str(exc))
    if (args.check or args.verify) and not args.system:
        parser.error("--check and --verify need --system")
    start = time.perf_counter()
    try:
        if args.suite:
            config = _load_suite(args.suite, bounds, bool(given))
            report = run_suite(config)
            body, passed, command = {"suite": suite_to_dict(report)}, report.passed, "suite"
        else:
            system = load_system(args.system)
            if args.check:
                names = _split(args.check, list(PROPERTIES) + list(DIAGNOSTICS), "property")
                if args.check == "all":
                    names = list(PROPERTIES)
                body, passed = _run_check(system, names, bounds)
                command = "check"
            else:
                ids = _split(args.verify, THEOREMS, "theorem id")
                if args.verify == "all" and isinstance(system, Sft):
                    ids = [t for t in ids if t not in ("P32", "P33")]
                body, passed = _run_verify(system, ids, bounds, args.allow_nonabelian)
                command = "verify"
    except (ConfigError, UnknownSystemError) as exc:
        print(f"config error: {exc}", file=stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=stderr)
        return EXIT_IO
    except HyperdynError as exc:
        print(f"not applicable: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE

    text = dumps(envelope(command, body, passed, time.perf_counter() - start))
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except OSError as exc:
        print(f"i/o error: {exc}", file=stderr)
        return EXIT_IO
    if args.assert_ and not passed:
        return EXIT_ASSERT
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
