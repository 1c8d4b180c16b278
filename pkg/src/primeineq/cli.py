"""Command-line front end: enumerate a family, run the inequality checks,
and emit machine-readable reports.

Exit status: 0 when the run completes and the expected property holds,
1 when violations beyond the accepted threshold (or a failed search)
occur, 2 on usage errors, 3 on resource exhaustion.  Reports go to
standard output; diagnostics go to standard error only.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError, SearchBudgetError
from .inequalities import (VerificationReport, ordering_stream,
                           verify_inequality)
from .polynomials import parse_poly
from .primes import PrimeTable, build_table, euler_phi, load_table, save_table
from .sequences import (DEFAULT_COUNTEREXAMPLE_SEARCH,
                        CoprimeProductSequence, build_coprime_products,
                        build_counterexample_sequence,
                        enumerate_simultaneous_points, find_totative_value,
                        max_coprime_subset_size,
                        verify_coprime_product_inequality,
                        verify_reverse_inequality)

SCHEMA_VERSION = 1
CACHE_ENV_VAR = "PRIMEINEQ_CACHE_DIR"

SUBCOMMANDS = ("verify", "system", "bonse", "counterexample", "theta",
               "totative", "coprime")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@dataclass
class RunConfig:
    """Validated invocation parameters; one instance drives one run."""

    subcommand: str
    poly_texts: tuple = ()
    bound: int = 10 ** 6
    n_min: int = 1
    n_max: int | None = None
    exponent: int = 1
    terms: int = 6
    modulus: int | None = None
    residue: int | None = None
    m: int | None = None
    output_format: str = "json"
    threads: int = 1
    seed: int | None = None
    no_timings: bool = False
    threshold: int | None = None
    max_search: int = DEFAULT_COUNTEREXAMPLE_SEARCH
    norm: str = "sumsq"
    cache_dir: str | None = None


def _cache_dir(config: RunConfig):
    return config.cache_dir or os.environ.get(CACHE_ENV_VAR)


def _table_for(limit: int, config: RunConfig) -> PrimeTable:
    directory = _cache_dir(config)
    if not directory:
        return build_table(limit)
    path = os.path.join(directory, f"primes_{limit}.bin")
    if os.path.exists(path):
        try:
            table = load_table(path)
            if table.limit == limit:
                return table
        except (OSError, InputError) as exc:
            print(f"primeineq: ignoring unreadable cache {path}: {exc}",
                  file=sys.stderr)
    table = build_table(limit)
    try:
        os.makedirs(directory, exist_ok=True)
        save_table(table, path)
    except OSError as exc:
        print(f"primeineq: could not write cache {path}: {exc}",
              file=sys.stderr)
    return table


def _default_threshold(config: RunConfig) -> int:
    if config.threshold is not None:
        return config.threshold
    if config.subcommand == "verify":
        return 2  # observed failures of the linear families sit at n <= 2
    if config.subcommand == "bonse":
        return {1: 1, 2: 3, 3: 4}.get(config.exponent, 0)
    if config.subcommand == "system":
        return 1
    return 0


def _report_doc(report: VerificationReport, timings, config: RunConfig):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": report.family,
        "bound": report.bound,
        "exhaustive": report.exhaustive,
        "probabilistic_primality": report.probabilistic_primality,
        "sequence_prefix": list(report.sequence_prefix),
        "n_range": list(report.n_range),
        "violations": list(report.violations),
        "empirical_threshold": report.empirical_threshold,
        "exponent": report.exponent,
    }
    if not config.no_timings:
        doc["timings"] = timings
    return doc


def _emit_json(doc):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _emit_report_csv(values, n_min, exponent):
    sys.stdout.write("n,lhs_log,rhs_log,ordering\n")
    for n, order, lhs_log, rhs_log in ordering_stream(values, exponent):
        if n < n_min:
            continue
        sys.stdout.write(
            f"{n},{lhs_log:.12g},{rhs_log:.12g},{order.value}\n")


def _emit_report_text(report: VerificationReport):
    lo, hi = report.n_range
    sys.stdout.write(f"family:              {report.family}\n")
    sys.stdout.write(f"bound:               {report.bound}\n")
    sys.stdout.write(f"terms:               {len(report.sequence_prefix)}"
                     f"{'+' if len(report.sequence_prefix) == 100 else ''}"
                     f" (prefix shown in JSON output)\n")
    sys.stdout.write(f"checked n:           {lo}..{hi}\n")
    sys.stdout.write(f"exponent:            {report.exponent}\n")
    sys.stdout.write(f"violations:          "
                     f"{list(report.violations) or 'none'}\n")
    sys.stdout.write(f"empirical threshold: {report.empirical_threshold}\n")
    sys.stdout.write(f"exhaustive:          {report.exhaustive}\n")
    sys.stdout.write(f"probabilistic:       "
                     f"{report.probabilistic_primality}\n")


def _status_for(report: VerificationReport, config: RunConfig) -> int:
    if report.empirical_threshold > _default_threshold(config):
        return EXIT_VIOLATION
    return EXIT_OK


def _nth_prime_limit(n: int) -> int:
    """Sieve limit guaranteed to cover the first n primes."""
    if n < 6:
        return 15
    x = float(n)
    return int(x * (math.log(x) + math.log(math.log(x)))) + 10


# --- subcommand pipelines --------------------------------------------------

def _run_verify(config: RunConfig) -> int:
    from .polynomials import enumerate_prime_values
    if not config.poly_texts:
        raise InputError("verify needs at least one --poly")
    if config.output_format == "csv" and len(config.poly_texts) > 1:
        raise InputError("csv output supports a single --poly")
    polys = [parse_poly(text) for text in config.poly_texts]
    t0 = time.perf_counter()
    table = _table_for(config.bound, config)
    t1 = time.perf_counter()
    status = EXIT_OK
    docs = []
    for poly in polys:
        seq = enumerate_prime_values(poly, config.bound, table)
        t2 = time.perf_counter()
        values = list(seq.values)
        if config.n_max is not None:
            values = values[:config.n_max + 1]
        report = verify_inequality(values, n_min=config.n_min,
                                   exponent=config.exponent,
                                   family=str(poly), bound=config.bound,
                                   exhaustive=seq.exhaustive)
        t3 = time.perf_counter()
        timings = {"table_s": round(t1 - t0, 6),
                   "enumerate_s": round(t2 - t1, 6),
                   "verify_s": round(t3 - t2, 6)}
        status = max(status, _status_for(report, config))
        if config.output_format == "csv":
            _emit_report_csv(values, config.n_min, config.exponent)
        elif config.output_format == "text":
            _emit_report_text(report)
        else:
            docs.append(_report_doc(report, timings, config))
    if config.output_format == "json":
        _emit_json(docs[0] if len(docs) == 1 else docs)
    return status


def _run_system(config: RunConfig) -> int:
    if not config.poly_texts:
        raise InputError("system needs at least one --poly")
    polys = [parse_poly(text) for text in config.poly_texts]
    t0 = time.perf_counter()
    table = _table_for(config.bound, config)
    t1 = time.perf_counter()
    points = enumerate_simultaneous_points(polys, config.bound, table,
                                           norm=config.norm)
    seq = build_coprime_products(points, system=polys, bound=config.bound)
    if config.n_max is not None:
        seq = CoprimeProductSequence(
            products=seq.products[:config.n_max + 1],
            chosen_points=seq.chosen_points[:config.n_max + 1],
            system=seq.system, bound=seq.bound, exhaustive=seq.exhaustive)
    t2 = time.perf_counter()
    report = verify_coprime_product_inequality(seq, n_min=config.n_min)
    t3 = time.perf_counter()
    timings = {"table_s": round(t1 - t0, 6),
               "enumerate_s": round(t2 - t1, 6),
               "verify_s": round(t3 - t2, 6)}
    status = _status_for(report, config)
    if config.output_format == "csv":
        _emit_report_csv(list(seq.products), config.n_min, 1)
    elif config.output_format == "text":
        _emit_report_text(report)
    else:
        _emit_json(_report_doc(report, timings, config))
    return status


def _run_bonse(config: RunConfig) -> int:
    n_max = config.n_max if config.n_max is not None else 1000
    if n_max < config.n_min + 1:
        raise InputError(f"--n-max {n_max} leaves nothing to check above "
                         f"--n-min {config.n_min}")
    t0 = time.perf_counter()
    limit = _nth_prime_limit(n_max + 1)
    table = _table_for(limit, config)
    while table.count < n_max + 1:
        limit *= 2
        table = _table_for(limit, config)
    t1 = time.perf_counter()
    values = list(table.primes[:n_max + 1])
    report = verify_inequality(values, n_min=config.n_min,
                               exponent=config.exponent, family="primes",
                               bound=values[-1], exhaustive=True)
    t2 = time.perf_counter()
    timings = {"table_s": round(t1 - t0, 6),
               "verify_s": round(t2 - t1, 6)}
    status = _status_for(report, config)
    if config.output_format == "csv":
        _emit_report_csv(values, config.n_min, config.exponent)
    elif config.output_format == "text":
        _emit_report_text(report)
    else:
        _emit_json(_report_doc(report, timings, config))
    return status


def _run_counterexample(config: RunConfig) -> int:
    if config.terms < 2:
        raise InputError("counterexample needs --terms >= 2")
    t0 = time.perf_counter()
    seq = build_counterexample_sequence(config.terms, config.max_search)
    t1 = time.perf_counter()
    report = verify_reverse_inequality(seq)
    t2 = time.perf_counter()
    timings = {"build_s": round(t1 - t0, 6),
               "verify_s": round(t2 - t1, 6)}
    status = _status_for(report, config)
    if config.output_format == "csv":
        _emit_report_csv(list(seq.terms), 1, 1)
    elif config.output_format == "text":
        _emit_report_text(report)
    else:
        _emit_json(_report_doc(report, timings, config))
    return status


def _run_theta(config: RunConfig) -> int:
    if config.output_format == "csv":
        raise InputError("theta has no csv form; use json or text")
    if (config.modulus is None) != (config.residue is None):
        raise InputError("--modulus and --residue go together")
    t0 = time.perf_counter()
    table = _table_for(config.bound, config)
    if config.modulus is not None:
        value = table.theta_ap(config.bound, config.modulus, config.residue)
        expected = config.bound / euler_phi(config.modulus)
    else:
        value = table.theta(config.bound)
        expected = float(config.bound)
    ratio = value.value / expected
    equivalence = None
    if config.n_max is not None:
        from .inequalities import theta_equivalence_check
        agree = all(theta_equivalence_check(table, n)
                    for n in range(1, config.n_max + 1))
        equivalence = {"checked_to": config.n_max, "all_agree": agree}
    t1 = time.perf_counter()
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": "theta",
        "bound": config.bound,
        "modulus": value.modulus,
        "residue": value.residue,
        "theta": f"{value.value:.12g}",
        "ratio": f"{ratio:.12g}",
    }
    if equivalence is not None:
        doc["equivalence"] = equivalence
    if not config.no_timings:
        doc["timings"] = {"total_s": round(t1 - t0, 6)}
    status = EXIT_OK
    if equivalence is not None and not equivalence["all_agree"]:
        status = EXIT_VIOLATION
    if config.output_format == "text":
        kind = (f"theta({config.bound}; {value.modulus}, {value.residue})"
                if config.modulus is not None else f"theta({config.bound})")
        sys.stdout.write(f"{kind} = {value.value:.12g}\n")
        sys.stdout.write(f"normalized ratio = {ratio:.12g}\n")
        if equivalence is not None:
            sys.stdout.write(
                f"product/theta agreement for n <= {config.n_max}: "
                f"{'yes' if equivalence['all_agree'] else 'NO'}\n")
    else:
        _emit_json(doc)
    return status


def _run_totative(config: RunConfig) -> int:
    if config.output_format == "csv":
        raise InputError("totative has no csv form; use json or text")
    if not config.poly_texts:
        raise InputError("totative needs --poly")
    if len(config.poly_texts) > 1:
        raise InputError("totative takes a single --poly")
    if config.m is None:
        raise InputError("totative needs --m")
    poly = parse_poly(config.poly_texts[0])
    t0 = time.perf_counter()
    table = _table_for(max(config.m, 2), config)
    witness = find_totative_value(poly, config.m, table)
    t1 = time.perf_counter()
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": str(poly),
        "m": config.m,
        "found": witness is not None,
        "point": None if witness is None else list(witness.point),
        "value": None if witness is None else str(witness.value),
    }
    if not config.no_timings:
        doc["timings"] = {"total_s": round(t1 - t0, 6)}
    if config.output_format == "text":
        if witness is None:
            sys.stdout.write(
                f"no prime value of {poly} <= {config.m} is coprime to "
                f"{config.m}\n")
        else:
            sys.stdout.write(
                f"{poly} at {witness.point} = {witness.value}, coprime to "
                f"{config.m}\n")
    else:
        _emit_json(doc)
    return EXIT_OK if witness is not None else EXIT_VIOLATION


def _run_coprime(config: RunConfig) -> int:
    if config.output_format == "csv":
        raise InputError("coprime has no csv form; use json or text")
    n_max = config.n_max if config.n_max is not None else 60
    if n_max < 2:
        raise InputError("coprime needs --n-max >= 2")
    t0 = time.perf_counter()
    table = _table_for(max(n_max, 10), config)
    rows = []
    all_equal = True
    for n in range(2, n_max + 1):
        size = max_coprime_subset_size(n)
        pi_n = table.prime_pi(n)
        rows.append({"n": n, "max_subset": size, "prime_count": pi_n})
        if size != pi_n:
            all_equal = False
    t1 = time.perf_counter()
    doc = {
        "schema_version": SCHEMA_VERSION,
        "family": "max-coprime-subset",
        "n_range": [2, n_max],
        "all_equal_prime_count": all_equal,
        "rows": rows,
    }
    if not config.no_timings:
        doc["timings"] = {"total_s": round(t1 - t0, 6)}
    if config.output_format == "text":
        for row in rows:
            sys.stdout.write(f"n={row['n']}: max pairwise-coprime subset "
                             f"{row['max_subset']}, primes {row['prime_count']}\n")
        sys.stdout.write("agreement: "
                         f"{'yes' if all_equal else 'NO'}\n")
    else:
        _emit_json(doc)
    return EXIT_OK if all_equal else EXIT_VIOLATION


_PIPELINES = {
    "verify": _run_verify,
    "system": _run_system,
    "bonse": _run_bonse,
    "counterexample": _run_counterexample,
    "theta": _run_theta,
    "totative": _run_totative,
    "coprime": _run_coprime,
}


def run(config: RunConfig) -> int:
    """Execute one validated configuration; returns the exit status."""
    if config.subcommand not in SUBCOMMANDS:
        raise InputError(f"unknown subcommand {config.subcommand!r}")
    if config.bound < 2:
        raise InputError(f"--bound must be >= 2, got {config.bound}")
    if config.n_min < 1:
        raise InputError(f"--n-min must be >= 1, got {config.n_min}")
    if config.exponent < 1:
        raise InputError(f"--exponent must be >= 1, got {config.exponent}")
    if config.output_format not in ("json", "csv", "text"):
        raise InputError(f"unknown format {config.output_format!r}")
    if config.threads < 1:
        raise InputError(f"--threads must be >= 1, got {config.threads}")
    if config.threads > 1:
        print("primeineq: --threads > 1 requested; pipelines are "
              "sequential, continuing single-threaded", file=sys.stderr)
    return _PIPELINES[config.subcommand](config)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primeineq",
        description="Exact verification of primorial-style inequalities "
                    "over prime values of integer polynomials.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--poly", action="append", default=[],
                       metavar="TEXT",
                       help="polynomial like '6*x+1' (repeatable for "
                            "systems)")
        p.add_argument("--bound", type=int, default=10 ** 6,
                       help="enumeration bound on values (default 10^6)")
        p.add_argument("--n-min", type=int, default=1, dest="n_min")
        p.add_argument("--n-max", type=int, default=None, dest="n_max")
        p.add_argument("--exponent", type=int, default=1,
                       help="power k in product > next^k (default 1)")
        p.add_argument("--terms", type=int, default=6,
                       help="terms of the reversing sequence to build")
        p.add_argument("--modulus", type=int, default=None)
        p.add_argument("--residue", type=int, default=None)
        p.add_argument("--m", type=int, default=None,
                       help="coprimality modulus for totative search")
        p.add_argument("--format", choices=("json", "csv", "text"),
                       default="json", dest="output_format")
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; runs are "
                            "sequential")
        p.add_argument("--seed", type=int, default=None,
                       help="reserved for randomized property runs")
        p.add_argument("--no-timings", action="store_true",
                       dest="no_timings",
                       help="omit wall-clock timings for reproducible "
                            "output")
        p.add_argument("--threshold", type=int, default=None,
                       help="largest acceptable violating n before exit "
                            "status 1")
        p.add_argument("--max-search", type=int,
                       default=DEFAULT_COUNTEREXAMPLE_SEARCH,
                       dest="max_search",
                       help="residue-class scan budget per term")
        p.add_argument("--norm", choices=("sumsq", "max"), default="sumsq",
                       help="ranking norm for simultaneous prime points")
        p.add_argument("--cache-dir", default=None, dest="cache_dir",
                       help=f"sieve cache directory (default "
                            f"${CACHE_ENV_VAR})")
        return p

    add("verify", "enumerate a polynomial's primes and check the product "
                  "inequality")
    add("system", "greedy coprime products over simultaneous prime points")
    add("bonse", "product vs. next-prime powers over the plain primes")
    add("counterexample", "build the least-prime-residue chain that "
                          "reverses the inequality")
    add("theta", "Chebyshev log-sums, optional restriction to a residue "
                 "class")
    add("totative", "least prime value of a polynomial coprime to m")
    add("coprime", "exhaustive max pairwise-coprime subset vs. prime "
                   "counts")
    return parser


def config_from_args(args) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        poly_texts=tuple(args.poly),
        bound=args.bound,
        n_min=args.n_min,
        n_max=args.n_max,
        exponent=args.exponent,
        terms=args.terms,
        modulus=args.modulus,
        residue=args.residue,
        m=args.m,
        output_format=args.output_format,
        threads=args.threads,
        seed=args.seed,
        no_timings=args.no_timings,
        threshold=args.threshold,
        max_search=args.max_search,
        norm=args.norm,
        cache_dir=args.cache_dir,
    )


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    config = config_from_args(args)
    try:
        return run(config)
    except SearchBudgetError as exc:
        print(f"primeineq: search budget exhausted: {exc}", file=sys.stderr)
        if exc.partial is not None:
            print(f"primeineq: partial sequence: "
                  f"{list(exc.partial.terms)}", file=sys.stderr)
        return EXIT_RESOURCE
    except ResourceLimitError as exc:
        print(f"primeineq: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InputError as exc:
        print(f"primeineq: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryError:
        print("primeineq: out of memory", file=sys.stderr)
        return EXIT_RESOURCE


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
