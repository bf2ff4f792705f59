"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation/format error,
3 resource guard exceeded.
"""
from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

from . import bench as bench_mod
from .assemble import assemble
from .ioformats import (
    HomologyTable,
    homology_to_strings,
    parse_gene_order,
    parse_homology,
    parse_ist,
    write_ist,
    write_pairs,
    write_sets,
)
from .model import FormatError, ResourceLimitError, SearchParams, ValidationError
from .oracle import brute_force_pairs
from .sweep import enumerate_pairs
from .synth import PlantedSpec, generate_planted, random_instance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> Parser:
    parser = Parser(prog="awci", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def search_flags(p: Parser, prune: bool = False) -> None:
        p.add_argument("--delta", type=int, default=0)
        p.add_argument("--quorum", type=int, default=2)
        p.add_argument("--min-size", type=int, default=0)
        p.add_argument("--refine-iters", type=int, default=3)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--no-filter", action="store_true",
                       help="disable the ridge filter (slower, same output)")
        if prune:
            p.add_argument("--no-prune", action="store_true",
                           help="keep dominated graph vertices")

    p = sub.add_parser("ingest", help="homology table to IST")
    p.add_argument("--homology", required=True)
    p.add_argument("--genes", action="append", required=True,
                   metavar="GENOME=FILE")
    p.add_argument("--threshold", type=float, default=0.0)
    p.add_argument("--out", default="-")

    p = sub.add_parser("pairs", help="enumerate interval pairs")
    p.add_argument("ist")
    search_flags(p)
    p.add_argument("--out", default="-")

    p = sub.add_parser("sets", help="full pipeline to maximal closed sets")
    p.add_argument("ist")
    search_flags(p, prune=True)
    p.add_argument("--out", default="-")

    p = sub.add_parser("gen", help="emit a planted dataset plus ground truth")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--alphabet-size", type=int, default=50)
    p.add_argument("--blocks", type=int, default=3)
    p.add_argument("--block-length", type=int, default=20)
    p.add_argument("--planted-delta", type=int, default=0)
    p.add_argument("--background-sharing", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="PREFIX")

    p = sub.add_parser("bench", help="parameter-grid benchmark")
    p.add_argument("--m-list", default="4,8,16")
    p.add_argument("--delta-list", default="0,2")
    p.add_argument("--quorum-list", default="")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--min-size", type=int, default=10)
    p.add_argument("--block-length", type=int, default=20)
    p.add_argument("--background-sharing", type=float, default=0.02)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default="-")

    p = sub.add_parser("verify", help="differential checks against the oracle")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--delta-list", default="0,1,2")
    p.add_argument("--min-size", type=int, default=1)
    return parser


@contextmanager
def open_out(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _params(args) -> SearchParams:
    return SearchParams(delta=args.delta, quorum=args.quorum,
                        min_size=args.min_size, refine_iters=args.refine_iters)


def _load_dataset(path: str):
    with open(path) as fh:
        return parse_ist(fh, filename=path)


def cmd_ingest(args) -> int:
    gene_orders = {}
    contig_breaks = {}
    for spec in args.genes:
        genome, _, path = spec.partition("=")
        if not genome or not path:
            raise UsageError(f"--genes expects GENOME=FILE, got {spec!r}")
        with open(path) as fh:
            gene_orders[genome], contig_breaks[genome] = parse_gene_order(fh, path)
    with open(args.homology) as fh:
        records = parse_homology(fh, args.homology)
    table = HomologyTable(records, gene_orders, contig_breaks)
    dataset = homology_to_strings(table, args.threshold)
    with open_out(args.out) as fh:
        write_ist(dataset, fh)
    return EXIT_OK


def cmd_pairs(args) -> int:
    dataset = _load_dataset(args.ist)
    if args.quorum > len(dataset):
        raise UsageError(f"quorum {args.quorum} exceeds the {len(dataset)} "
                         "strings in the dataset")
    pairs = enumerate_pairs(dataset, _params(args),
                            use_filter=not args.no_filter,
                            threads=args.threads)
    with open_out(args.out) as fh:
        write_pairs(pairs, fh)
    return EXIT_OK


def cmd_sets(args) -> int:
    dataset = _load_dataset(args.ist)
    if args.quorum > len(dataset):
        raise UsageError(f"quorum {args.quorum} exceeds the {len(dataset)} "
                         "strings in the dataset")
    params = _params(args)
    pairs = enumerate_pairs(dataset, params,
                            use_filter=not args.no_filter,
                            threads=args.threads)
    sets = assemble(pairs, dataset, params, prune=not args.no_prune)
    with open_out(args.out) as fh:
        write_sets(sets, fh, delta=params.delta, quorum=params.quorum)
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = PlantedSpec(m=args.m, n=args.n, alphabet_size=args.alphabet_size,
                       block_count=args.blocks, block_length=args.block_length,
                       planted_delta=args.planted_delta,
                       background_sharing=args.background_sharing,
                       seed=args.seed)
    dataset, truth = generate_planted(spec)
    with open(args.out + ".ist", "w") as fh:
        write_ist(dataset, fh)
    with open(args.out + ".truth", "w") as fh:
        write_sets(truth, fh, delta=spec.planted_delta, quorum=spec.m)
    return EXIT_OK


def cmd_bench(args) -> int:
    m_values = [int(v) for v in args.m_list.split(",") if v]
    delta_values = [int(v) for v in args.delta_list.split(",") if v]
    quorum_values = [int(v) for v in args.quorum_list.split(",") if v] or None
    reports = bench_mod.run_bench(
        m_values, delta_values, quorum_values,
        n=args.n, folds=args.folds, base_seed=args.seed,
        min_size=args.min_size, block_length=args.block_length,
        background_sharing=args.background_sharing, threads=args.threads)
    with open_out(args.out) as fh:
        bench_mod.write_reports(reports, fh)
    return EXIT_OK


def cmd_verify(args) -> int:
    deltas = [int(v) for v in args.delta_list.split(",") if v]
    matches = 0
    for seed in range(args.seeds):
        dataset = random_instance(seed)
        delta = deltas[seed % len(deltas)]
        params = SearchParams(delta=delta, quorum=2, min_size=args.min_size)
        expected = brute_force_pairs(dataset, params)
        got = list(enumerate_pairs(dataset, params, quorum_grouping=False))
        got_off = list(enumerate_pairs(dataset, params, quorum_grouping=False,
                                       use_filter=False))
        if got == expected and got_off == expected:
            matches += 1
        else:
            print(f"seed {seed}: MISMATCH ({len(got)} vs {len(expected)} pairs)",
                  file=sys.stderr)
    print(f"{matches}/{args.seeds} oracle matches")
    return EXIT_OK if matches == args.seeds else EXIT_INVALID


COMMANDS = {
    "ingest": cmd_ingest,
    "pairs": cmd_pairs,
    "sets": cmd_sets,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FormatError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
