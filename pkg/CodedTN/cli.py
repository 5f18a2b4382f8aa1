# MIT License
#
# Copyright (c) 2022 Emc2356
# the full license text can be found in the LICENSE file


"""
the codedtn command line
"""

from typing import Any, Callable, Dict, List, Optional, Sequence, TextIO, Tuple
from pathlib import Path
import argparse
import itertools
import logging
import json
import csv
import sys

from tqdm import tqdm

from CodedTN.Classes.benchmarks import encoding_cost_scaling, partition_timing
from CodedTN.Classes.coding import (
    CodeScheme,
    applicable_schemes,
    degree,
    f_resilient,
    gain,
    plan_best,
    scheme_from_name,
)
from CodedTN.Classes.examples import star_network
from CodedTN.Classes.field import parse_field
from CodedTN.Classes.network import SlicingPlan, TensorNetwork, full_contract, slice_sum, validate
from CodedTN.Classes.oracle import alignment_grid, check_alignment, mutate_strides
from CodedTN.Classes.simulator import FailurePattern, run_experiment
from CodedTN.Classes.tensor import Tensor
from CodedTN.config import Settings, load_settings
from CodedTN.constants import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, FIELD_COMPLEX128, FIELD_PRIME, SCHEME_AUTO, SCHEME_NAMES
from CodedTN.exceptions import CodedTNException, ConfigError, SpecFormatError
from CodedTN.utils.spec_io import NetworkSpec, load_spec, write_report

log = logging.getLogger(__name__)

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"

SWEEP_COLUMNS = (
    "plan",
    "scheme",
    "f",
    "degree",
    "workers",
    "replicate_workers",
    "gain",
    "decode_verified",
    "error",
)


# argument types, a bad value is a usage error (exit 2)
def parse_plan(text: str) -> SlicingPlan:
    """
    "m1:L1,m2:L2,..." -> SlicingPlan with the default labels s1, s2, ...
    :param text: str
    :return: SlicingPlan
    """
    pairs: List[Tuple[int, int]] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            m, L = (int(v) for v in part.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"malformed plan entry {part!r}, expected m:L")
        if m < 2 or L < 1:
            raise argparse.ArgumentTypeError(f"the plan entry {part!r} needs m >= 2 and L >= 1")
        pairs.append((m, L))
    if not pairs:
        raise argparse.ArgumentTypeError(f"the plan {text!r} is empty")
    return SlicingPlan.from_pairs(pairs)


def parse_f_range(text: str) -> List[int]:
    """
    "a..b" (inclusive) or a single "f"
    """
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = (int(v) for v in text.split(".."))
        else:
            a = b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed failure range {text!r}, expected a..b")
    if a < 0 or b < a:
        raise argparse.ArgumentTypeError(f"the failure range {text!r} is empty or negative")
    return list(range(a, b + 1))


def parse_failures(text: str) -> Tuple[str, Tuple[int, ...]]:
    """
    "adversarial", "random" or "explicit:1,2,3"
    """
    text = str(text).strip().lower()
    if text in ("adversarial", "random"):
        return text, ()
    if text.startswith("explicit:"):
        try:
            ids = tuple(int(v) for v in text[len("explicit:"):].split(",") if v.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"malformed worker ids in {text!r}")
        return "explicit", ids
    raise argparse.ArgumentTypeError(f"unknown failure mode {text!r}, expected adversarial, random or explicit:<ids>")


def parse_labels(text: str) -> List[str]:
    return [label.strip() for label in str(text).split(",") if label.strip()]


def parse_ints(text: str) -> List[int]:
    try:
        return [int(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def _pattern(failures: Tuple[str, Tuple[int, ...]], f: int, seed: int) -> FailurePattern:
    mode, ids = failures
    if mode == "explicit":
        return FailurePattern.explicit(ids)
    if mode == "random":
        return FailurePattern.random(f, seed)
    return FailurePattern.adversarial(f, seed)


def format_tensor(t: Tensor) -> str:
    if not t.rank:
        return str(t.item())
    return str(t.tolist())


def _load(args: argparse.Namespace, settings: Settings) -> NetworkSpec:
    spec = load_spec(args.spec, settings.seed)
    if settings.field is not None:
        net = spec.network.astype(parse_field(settings.field))
        spec = NetworkSpec(net, spec.slice, spec.seed, spec.path)
    return spec


def cmd_validate(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    """
    it prints the violations and warnings of a spec, exit 0 iff there are no violations
    """
    spec = _load(args, settings)
    report = validate(spec.network, spec.slice)
    for line in report.lines():
        print(line, file=out)
    net = spec.network
    print(
        f"{len(net)} tensors, {len(net.closed_labels())} closed and {len(net.open_labels())} open edges, "
        f"slicing {list(spec.slice)}: {'ok' if report.ok else 'invalid'}",
        file=out,
    )
    return EXIT_OK if report.ok else EXIT_FAILURE


def cmd_contract(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    """
    it prints the full contraction of a spec and optionally checks it against the slice sum
    """
    spec = _load(args, settings)
    net = spec.network
    report = validate(net, spec.slice)
    if not report.ok:
        for line in report.lines():
            print(line, file=out)
        return EXIT_FAILURE
    order = args.order
    result = full_contract(net, order)
    print(f"labels: {list(result.labels)}", file=out)
    print(format_tensor(result), file=out)
    if not args.check_slices:
        return EXIT_OK

    total = slice_sum(net, spec.plan(), None)
    abs_err, rel_err, exact = net.field.error_metric(total.transpose(result.labels).data, result.data)
    if exact:
        print("slice-sum: exact match", file=out)
        return EXIT_OK
    if not net.field.exact and rel_err is not None and rel_err <= settings.float_tolerance:
        print(f"slice-sum: match (max relative error {rel_err:.3e})", file=out)
        return EXIT_OK
    print("slice-sum: MISMATCH", file=out)
    return EXIT_FAILURE


def cmd_simulate(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    """
    it runs one experiment and writes the report, exit 0 iff decoding succeeded and
    matched the full contraction
    """
    spec = _load(args, settings)
    seed = settings.seed if settings.seed is not None else spec.seed
    plan = spec.plan()
    scheme = scheme_from_name(args.scheme, plan, args.f, args.k)
    if args.scheme == SCHEME_AUTO:
        print(f"auto selected {scheme.name}", file=out)
    pattern = _pattern(args.failures, args.f, seed)
    report = run_experiment(
        spec.network,
        scheme,
        args.f,
        pattern,
        threads=settings.threads,
        exhaustive_limit=settings.exhaustive_limit,
        random_subsets=settings.random_subsets,
        float_tolerance=settings.float_tolerance,
    )
    if args.out:
        write_report(report, args.out, spec.path)

    print(f"scheme: {report.scheme}", file=out)
    print(f"degree: {report.degree}", file=out)
    print(f"workers provisioned: {report.workers_provisioned} (formula {'ok' if report.formula_check else 'MISMATCH'})", file=out)
    print(f"gain over replication: {report.gain}", file=out)
    print(f"failure subsets checked: {report.subsets_checked}{' (exhaustive)' if report.exhaustive else ''}", file=out)
    if not report.decode_success:
        print(f"decode: resilience exceeded, failed workers {report.failing_subset}, group {report.deficient_group}", file=out)
    elif report.oracle_match:
        print("decode: " + ("exact match" if report.exact_match else f"match (max relative error {report.max_rel_error:.3e})"), file=out)
    else:
        print(f"decode: MISMATCH for failed workers {report.failing_subset}", file=out)
    return EXIT_OK if report.success else EXIT_FAILURE


def formula_rows(plan: SlicingPlan, fs: Sequence[int]) -> List[Dict[str, Any]]:
    """
    per f one row per applicable scheme with its degree, worker count and gain,
    the scheme plan_best picks is flagged
    :param plan: SlicingPlan
    :param fs: the failure counts
    :return: List[Dict[str, Any]]
    """
    schemes = applicable_schemes(plan)
    rows: List[Dict[str, Any]] = []
    for f in fs:
        best = plan_best(plan, f)
        for scheme in schemes:
            rows.append(
                {
                    "f": f,
                    "scheme": scheme.name,
                    "degree": degree(scheme) if scheme.is_coded else None,
                    "workers": f_resilient(scheme, f),
                    "gain": gain(scheme, f),
                    "best": scheme == best,
                }
            )
    return rows


def cmd_formulas(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    plan: SlicingPlan = args.plan
    print(f"plan {plan}, N = {plan.N}", file=out)
    print(f"{'f':>4}  {'scheme':<18}{'degree':>8}{'workers':>10}{'gain':>10}", file=out)
    for row in formula_rows(plan, args.f_range):
        d = "-" if row["degree"] is None else str(row["degree"])
        mark = "  *" if row["best"] else ""
        print(f"{row['f']:>4}  {row['scheme']:<18}{d:>8}{row['workers']:>10}{row['gain']:>10}{mark}", file=out)
    return EXIT_OK


def _sweep_plans(config: Dict[str, Any]) -> List[SlicingPlan]:
    plans = [parse_plan(text) for text in config.get("plans", [])]
    grid = config.get("grid")
    if grid:
        pairs = [(int(m), int(L)) for m in grid.get("m", [2]) for L in grid.get("L", [2])]
        for combo in itertools.product(pairs, repeat=int(grid.get("n", 1))):
            plans.append(SlicingPlan.from_pairs(combo))
    return plans


def sweep_rows(
    config: Dict[str, Any],
    settings: Settings,
    progress: bool = False,
) -> List[Dict[str, Any]]:
    """
    one row per (plan, scheme, f) cell of a sweep config, every cell is built as a star
    network and simulated in the configured field, a failing cell records its error and
    the sweep continues
    :param config: the parsed sweep config
    :param settings: Settings
    :param progress: show a tqdm bar
    :return: List[Dict[str, Any]]
    """
    field = parse_field(config.get("field", settings.field or FIELD_PRIME))
    seed = int(config.get("seed", settings.seed or 0))
    simulate = bool(config.get("simulate", True))
    mode = str(config.get("failures", "adversarial"))
    schemes = [str(s) for s in config.get("schemes", [SCHEME_AUTO])]
    fs = [int(f) for f in config.get("f", [0])]
    cells = list(itertools.product(_sweep_plans(config), schemes, fs))

    rows: List[Dict[str, Any]] = []
    for plan, name, f in tqdm(cells, desc="sweep", disable=not progress):
        row: Dict[str, Any] = dict.fromkeys(SWEEP_COLUMNS, "")
        row.update(plan=",".join(f"{m}:{L}" for m, L in plan.pairs), scheme=name, f=f)
        try:
            net, net_plan = star_network(plan.pairs, field, seed)
            scheme = scheme_from_name(name, net_plan, f)
            row["scheme"] = scheme.name
            row["degree"] = degree(scheme) if scheme.is_coded else ""
            row["workers"] = f_resilient(scheme, f)
            row["replicate_workers"] = net_plan.N * (f + 1)
            row["gain"] = gain(scheme, f)
            if simulate:
                pattern = _pattern(parse_failures(mode), f, seed)
                report = run_experiment(
                    net,
                    scheme,
                    f,
                    pattern,
                    threads=settings.threads,
                    exhaustive_limit=settings.exhaustive_limit,
                    random_subsets=settings.random_subsets,
                    float_tolerance=settings.float_tolerance,
                )
                row["decode_verified"] = report.success
        except (CodedTNException, ValueError, argparse.ArgumentTypeError) as e:
            log.info("sweep cell %s %s f=%d failed: %s", row["plan"], name, f, e)
            row["decode_verified"] = False
            row["error"] = str(e)
        rows.append(row)
    return rows


def cmd_sweep(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    try:
        config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    except OSError as e:
        raise SpecFormatError(f"can not read {args.config}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise SpecFormatError(f"{args.config}: line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(config, dict):
        raise SpecFormatError(f"{args.config}: the sweep config must be a JSON object")

    try:
        rows = sweep_rows(config, settings, progress=sys.stderr.isatty())
    except argparse.ArgumentTypeError as e:
        raise SpecFormatError(f"{args.config}: {e}")

    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            _write_csv(rows, fh)
    else:
        _write_csv(rows, out)
    failed = [row for row in rows if row["error"]]
    if failed:
        log.warning("%d of %d sweep cells failed", len(failed), len(rows))
    return EXIT_OK


def _write_csv(rows: Sequence[Dict[str, Any]], fh: TextIO) -> None:
    writer = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def cmd_verify_alignment(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    """
    it checks the coefficient alignment of every plan of the sweep grid and that
    every single-stride mutation breaks it
    """
    schemes = alignment_grid(args.two_node_limit, args.hyper_limit, args.max_n)
    all_ok = True
    print(f"{'scheme':<10}{'plan':<36}{'degree':>8}  {'aligned':<8}{'mutants':>10}", file=out)
    for scheme in schemes:
        result = check_alignment(scheme)
        mutants = mutate_strides(scheme) if args.mutations else []
        caught = sum(1 for strides in mutants if not check_alignment(scheme, strides).passed)
        ok = result.passed and caught == len(mutants)
        all_ok = all_ok and ok
        plan = ",".join(f"{m}:{L}" for m, L in scheme.plan.pairs)
        status = "pass" if result.passed else "FAIL"
        mutant_text = f"{caught}/{len(mutants)}" if args.mutations else "-"
        print(f"{scheme.name:<10}{plan:<36}{degree(scheme):>8}  {status:<8}{mutant_text:>10}", file=out)
        if not result.passed:
            print(f"    {result.message} (exponent {result.exponent}, term {result.term})", file=out)
    print(f"{len(schemes)} plans: {'all aligned' if all_ok else 'FAILURES'}", file=out)
    return EXIT_OK if all_ok else EXIT_FAILURE


def cmd_bench(args: argparse.Namespace, settings: Settings, out: TextIO) -> int:
    """
    wall-clock experiments: encoded against sliced partitions of a spec, or the
    encoding cost scaling on the uniform family
    """
    from CodedTN import init

    if init(log.isEnabledFor(logging.DEBUG)):
        log.warning("the jitted kernels could not be built, timing the numpy fallback")
    if args.spec:
        spec = _load(args, settings)
        scheme = scheme_from_name(args.scheme, spec.plan(), 0)
        if not scheme.is_coded:
            raise SpecFormatError(f"the benchmark needs a coded scheme, {scheme.name} is not one")
        timing = partition_timing(spec.network, scheme, args.repeats, parse_field(settings.field or FIELD_COMPLEX128))
        print(f"sliced partition: {timing.sliced:.6f}s", file=out)
        print(f"encoded network:  {timing.encoded:.6f}s", file=out)
        print(f"relative difference: {timing.relative_difference:.2%}", file=out)
        return EXIT_OK

    result = encoding_cost_scaling(args.L, args.rank, args.m, args.repeats)
    print(f"{'L':>6}{'encode':>14}{'contract':>14}", file=out)
    for L, enc, con in zip(result.Ls, result.encode_times, result.contract_times):
        print(f"{L:>6}{enc:>14.6f}{con:>14.6f}", file=out)
    print(
        f"log-log slopes: encode {result.encode_slope:.2f}, contract {result.contract_slope:.2f}, "
        f"gap {result.slope_gap:.2f}",
        file=out,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    from CodedTN import __version__

    parser = argparse.ArgumentParser(
        prog="codedtn",
        description="coded parallel tensor network contraction: validation, simulation and formulas",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    parser.add_argument("--env-file", default=None, help="a .env file with CODEDTN_* settings")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("validate", help="check a network spec and its slicing plan")
    p.add_argument("spec", help="the network spec (JSON)")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("contract", help="contract a network spec")
    p.add_argument("spec")
    p.add_argument("--order", type=parse_labels, default=None, help="comma separated contraction order")
    p.add_argument("--check-slices", action="store_true", help="compare with the sum of the sliced partitions")
    p.add_argument("--field", default=None, help="f64, c128, gf or gf:<modulus>")
    p.set_defaults(handler=cmd_contract)

    p = sub.add_parser("simulate", help="run a coded master-worker experiment")
    p.add_argument("spec")
    p.add_argument("--scheme", default=SCHEME_AUTO, choices=SCHEME_NAMES)
    p.add_argument("-f", type=int, default=0, help="the failures the pool must survive")
    p.add_argument("-k", type=int, default=None, help="coded indices of partial2node")
    p.add_argument("--failures", type=parse_failures, default=("adversarial", ()),
                   help="adversarial, random or explicit:<id,id,...>")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="where to write the JSON report")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--field", default=None)
    p.add_argument("--exhaustive-limit", type=int, default=None)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("formulas", help="worker counts and gains of every applicable scheme")
    p.add_argument("--plan", type=parse_plan, required=True, help='"m1:L1,m2:L2,..."')
    p.add_argument("--f-range", type=parse_f_range, default=[0], help="a..b")
    p.set_defaults(handler=cmd_formulas)

    p = sub.add_parser("sweep", help="simulate a grid of plans, schemes and failure counts into CSV")
    p.add_argument("config", help="the sweep config (JSON)")
    p.add_argument("--out", default=None, help="the CSV file (stdout when omitted)")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("verify-alignment", help="symbolic coefficient alignment over a grid of plans")
    p.add_argument("--two-node-limit", type=int, default=32)
    p.add_argument("--hyper-limit", type=int, default=256)
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--no-mutations", dest="mutations", action="store_false")
    p.set_defaults(handler=cmd_verify_alignment)

    p = sub.add_parser("bench", help="encoding and contraction wall-clock experiments")
    p.add_argument("spec", nargs="?", default=None)
    p.add_argument("--scheme", default=SCHEME_AUTO, choices=SCHEME_NAMES)
    p.add_argument("--field", default=None)
    p.add_argument("--L", type=parse_ints, default=[6, 8, 12, 16, 24])
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("-m", type=int, default=2)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(handler=cmd_bench)
    return parser


def configure_logging(verbosity: int, level: str = "WARNING") -> None:
    if verbosity >= 2:
        level = "DEBUG"
    elif verbosity == 1:
        level = "INFO"
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    """
    the entry point of the codedtn script
    :param argv: the arguments (sys.argv[1:] when omitted)
    :param out: where the results are printed (stdout when omitted)
    :return: the exit code
    """
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    try:
        settings = load_settings(args.env_file)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(args.verbose, settings.log_level)
    # the flags a command does not define stay None and keep the settings
    settings = settings.with_overrides(
        field=getattr(args, "field", None),
        seed=getattr(args, "seed", None),
        threads=getattr(args, "threads", None),
        exhaustive_limit=getattr(args, "exhaustive_limit", None),
    )

    handler: Callable[[argparse.Namespace, Settings, TextIO], int] = args.handler
    try:
        return handler(args, settings, out)
    except (CodedTNException, ValueError) as e:
        log.debug("command %s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


__all__ = [
    "parse_plan",
    "parse_f_range",
    "parse_failures",
    "format_tensor",
    "formula_rows",
    "sweep_rows",
    "build_parser",
    "configure_logging",
    "main",
]
