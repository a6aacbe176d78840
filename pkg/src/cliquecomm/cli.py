"""Command-line surface: preprocess, generate, detect, evaluate, sweep, theme.

Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 resource cap or
timeout. Every run writes one manifest JSON alongside its outputs.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from pathlib import Path

from . import baselines, caa, hashtags, metrics
from .cliques import enumerate_maximal_cliques, filter_overlapping
from .errors import (
    CliquecommError,
    DeadlineExceededError,
    EdgeListParseError,
    ResourceLimitError,
)
from .graph import (
    load_cover,
    load_edge_list,
    mutualize,
    planted_partition,
    save_cover,
    save_edge_list,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit_Usage(message)


class SystemExit_Usage(Exception):
    pass


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(args, inputs, outputs, started, extra=None):
    outdir = Path(args.output_dir)
    manifest = {
        "subcommand": args.command,
        "params": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("func", "command") and not callable(v)
        },
        "inputs": {str(p): _sha256(p) for p in inputs},
        "outputs": [str(p) for p in outputs],
        "duration_secs": round(time.monotonic() - started, 3),
    }
    if extra:
        manifest.update(extra)
    path = outdir / f"manifest_{args.command.replace('-', '_')}.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _deadline(args):
    if args.timeout_secs is None:
        return None
    return time.monotonic() + args.timeout_secs


def _parse_bands(text: str):
    bands = []
    for part in text.split(","):
        part = part.strip()
        if part.endswith("+"):
            bands.append((int(part[:-1]), None))
        else:
            lo, hi = part.split("-")
            bands.append((int(lo), int(hi)))
    return metrics.validate_bands(bands)


def _parse_grid(text: str):
    return [float(x) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# Subcommands.

def cmd_mutualize(args):
    started = time.monotonic()
    d = load_edge_list(args.edges, directed=True)
    g = mutualize(d)
    out = Path(args.output_dir) / "mutual_edges.tsv"
    save_edge_list(g, out)
    print(f"mutualize: {len(d.edges)} directed edges -> {g.n} nodes, {g.m} mutual edges")
    _write_manifest(args, [args.edges], [out], started,
                    {"nodes": g.n, "edges": g.m})
    return EXIT_OK


def cmd_generate(args):
    started = time.monotonic()
    g = planted_partition(args.blocks, args.block_size, args.p_in, args.p_out, args.seed)
    out = Path(args.output_dir) / "planted_edges.tsv"
    save_edge_list(g, out)
    print(f"generate: {g.n} nodes, {g.m} edges ({args.blocks} blocks of {args.block_size})")
    _write_manifest(args, [], [out], started, {"nodes": g.n, "edges": g.m})
    return EXIT_OK


def cmd_caa(args):
    started = time.monotonic()
    g = load_edge_list(args.graph)
    params = caa.CaaParams(
        min_clique_size=args.min_clique_size,
        overlapping_threshold=args.overlapping_threshold,
        growing_threshold=args.growing_threshold,
        max_rounds=args.max_rounds,
        max_cliques=args.max_cliques,
    )
    summary = caa.CaaRunSummary()
    cover = caa.run_caa(g, params, threads=args.threads,
                        deadline=_deadline(args), summary=summary)
    out = Path(args.output_dir) / "caa_cover.txt"
    save_cover(g, cover, out)
    print(
        f"caa: {summary.seed_count} seeds -> {summary.community_count} communities "
        f"in {summary.wall_seconds:.2f}s; rounds histogram {summary.rounds_histogram}"
    )
    _write_manifest(args, [args.graph], [out], started, {
        "seed_count": summary.seed_count,
        "community_count": summary.community_count,
        "rounds_histogram": {str(k): v for k, v in summary.rounds_histogram.items()},
    })
    return EXIT_OK


def cmd_lp(args):
    started = time.monotonic()
    g = load_edge_list(args.graph)
    cover = baselines.label_propagation(
        g, baselines.LpParams(rng_seed=args.seed, max_iterations=args.max_iterations)
    )
    out = Path(args.output_dir) / "lp_cover.txt"
    save_cover(g, cover, out)
    print(f"lp: {len(cover)} communities")
    _write_manifest(args, [args.graph], [out], started,
                    {"community_count": len(cover)})
    return EXIT_OK


def cmd_cpm(args):
    started = time.monotonic()
    g = load_edge_list(args.graph)
    cover = baselines.clique_percolation(
        g,
        baselines.CpmParams(k=args.k, max_kcliques=args.max_kcliques),
        deadline=_deadline(args),
    )
    out = Path(args.output_dir) / "cpm_cover.txt"
    save_cover(g, cover, out)
    print(f"cpm: k={args.k}, {len(cover)} communities")
    _write_manifest(args, [args.graph], [out], started,
                    {"community_count": len(cover)})
    return EXIT_OK


def cmd_metrics(args):
    started = time.monotonic()
    g = load_edge_list(args.graph)
    bands = _parse_bands(args.bands)
    outdir = Path(args.output_dir)

    reports = {}
    for cover_path in args.covers:
        label = Path(cover_path).stem
        cover = load_cover(g, cover_path)
        reports[label] = metrics.evaluate(
            g, cover, bands, args.coverage_lo, args.coverage_hi
        )

    json_out = outdir / "metrics.json"
    json_out.write_text(json.dumps(
        {label: r.to_dict() for label, r in reports.items()},
        indent=2, sort_keys=True,
    ) + "\n")

    csv_out = outdir / "metrics.csv"
    with open(csv_out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([
            "algorithm_label", "band", "count", "percentage",
            "eq_contribution", "tpr_mean", "tpr_micro",
        ])
        for label, r in reports.items():
            for band in bands:
                bl = metrics.band_label(band)
                writer.writerow([
                    label, bl, r.histogram[bl],
                    f"{r.histogram_pct[bl]:.4f}",
                    repr(r.eq_by_band[bl]),
                    "" if r.tpr_mean_by_band[bl] is None else repr(r.tpr_mean_by_band[bl]),
                    "" if r.tpr_micro_by_band[bl] is None else repr(r.tpr_micro_by_band[bl]),
                ])

    header = f"{'algorithm':<20} {'communities':>11} {'largest':>8} {'coverage':>9} {'EQ':>9}"
    print(header)
    for label, r in reports.items():
        print(
            f"{label:<20} {r.community_count:>11} {r.largest_community_size:>8}"
            f" {r.coverage:>9.4f} {r.eq_total:>9.4f}"
        )
    _write_manifest(args, [args.graph, *args.covers], [json_out, csv_out], started)
    return EXIT_OK


def cmd_sweep(args):
    started = time.monotonic()
    g = load_edge_list(args.graph)
    grid = _parse_grid(args.grid)
    bands = _parse_bands(args.bands)
    outdir = Path(args.output_dir)
    deadline = _deadline(args)

    if args.sweep == "growing":
        # Overlap fixed at 0; each grid value reruns growth and bins sizes.
        min_size = args.min_clique_size if args.min_clique_size is not None else 3
        out = outdir / "sweep_growing.csv"
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["growing_threshold", "band", "count"])
            for value in grid:
                params = caa.CaaParams(
                    min_clique_size=min_size,
                    overlapping_threshold=0.0,
                    growing_threshold=value,
                )
                cover = caa.run_caa(g, params, threads=args.threads, deadline=deadline)
                counts, _ = metrics.size_histogram(cover, bands)
                for band in bands:
                    bl = metrics.band_label(band)
                    writer.writerow([value, bl, counts[bl]])
    else:
        # Kept-clique count per overlap threshold over large seed cliques.
        min_size = args.min_clique_size if args.min_clique_size is not None else 15
        cliques = enumerate_maximal_cliques(g, min_size, deadline=deadline)
        out = outdir / "sweep_overlapping.csv"
        with open(out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["overlapping_threshold", "kept_cliques"])
            for value in grid:
                kept = filter_overlapping(cliques, value)
                writer.writerow([value, len(kept.cliques)])

    print(f"sweep: wrote {out}")
    _write_manifest(args, [args.graph], [out], started)
    return EXIT_OK


def cmd_hashtag_report(args):
    started = time.monotonic()
    g = load_edge_list(args.graph)
    cover = load_cover(g, args.cover)
    table = hashtags.load_hashtags(args.hashtags, preserve_case=args.preserve_case)
    sample = hashtags.sample_communities(
        cover, args.size_lo, args.size_hi, args.count, args.seed
    )
    entries = [
        hashtags.community_theme(g, c, table, args.user_top_k, args.community_top_k)
        for c in sample
    ]

    outdir = Path(args.output_dir)
    json_out = outdir / "hashtag_report.json"
    json_out.write_text(json.dumps(
        [e.to_dict() for e in entries], indent=2, sort_keys=True,
    ) + "\n")

    text_out = outdir / "hashtag_report.txt"
    with open(text_out, "w", encoding="utf-8") as fh:
        for e in entries:
            tags = ", ".join(f"#{t} {c}" for t, c in e.top_tags)
            fh.write(f"community of {e.size} users | top tags: {tags}\n")
            jac = "n/a" if e.mean_pairwise_jaccard is None else f"{e.mean_pairwise_jaccard:.3f}"
            pen = "n/a" if e.top_tag_penetration is None else f"{e.top_tag_penetration:.3f}"
            fh.write(
                f"  mean pairwise top-{args.user_top_k} jaccard: {jac}; "
                f"top-tag penetration: {pen}; "
                f"members without data: {e.members_missing_data}\n"
            )
    print(f"hashtag-report: {len(entries)} communities themed")
    _write_manifest(
        args, [args.graph, args.cover, args.hashtags], [json_out, text_out], started
    )
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliquecomm",
                     description="Clique-seeded community detection and evaluation")
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--threads", type=int, default=1,
                        help="internal parallelism cap (default 1)")
    common.add_argument("--timeout-secs", type=float, default=None,
                        help="wall-clock budget; exceeding it exits 3")
    common.add_argument("--output-dir", default=".", help="where outputs land")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mutualize", parents=[common],
                       help="derive the mutual undirected graph from directed edges")
    p.add_argument("edges", help="directed edge-list file")
    p.set_defaults(func=cmd_mutualize)

    p = sub.add_parser("generate", parents=[common],
                       help="generate a planted-partition graph")
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--block-size", type=int, required=True)
    p.add_argument("--p-in", type=float, required=True)
    p.add_argument("--p-out", type=float, required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("caa", parents=[common], help="clique augmentation detector")
    p.add_argument("graph", help="undirected edge-list file")
    p.add_argument("--min-clique-size", type=int, default=3)
    p.add_argument("--overlapping-threshold", type=float, default=0.0)
    p.add_argument("--growing-threshold", type=float, default=0.7)
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--max-cliques", type=int, default=caa.DEFAULT_CLIQUE_CAP)
    p.set_defaults(func=cmd_caa)

    p = sub.add_parser("lp", parents=[common], help="label propagation detector")
    p.add_argument("graph")
    p.add_argument("--max-iterations", type=int, default=100)
    p.set_defaults(func=cmd_lp)

    p = sub.add_parser("cpm", parents=[common], help="clique percolation detector")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-kcliques", type=int, default=baselines.DEFAULT_KCLIQUE_CAP)
    p.set_defaults(func=cmd_cpm)

    p = sub.add_parser("metrics", parents=[common],
                       help="evaluate one or more covers against a graph")
    p.add_argument("graph")
    p.add_argument("covers", nargs="+", help="cover files; label = file stem")
    p.add_argument("--bands", default="1-3,4-9,10-150,151+")
    p.add_argument("--coverage-lo", type=int, default=4)
    p.add_argument("--coverage-hi", type=int, default=150)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("sweep", parents=[common],
                       help="threshold sweep experiments (CSV output)")
    p.add_argument("graph")
    p.add_argument("--sweep", choices=("growing", "overlapping"), required=True)
    p.add_argument("--grid", required=True, help="comma-separated threshold values")
    p.add_argument("--min-clique-size", type=int, default=None,
                   help="clique floor (default 3 for growing, 15 for overlapping)")
    p.add_argument("--bands", default="1-3,4-9,10-150,151+")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hashtag-report", parents=[common],
                       help="theme sampled communities from hashtag counts")
    p.add_argument("graph")
    p.add_argument("cover")
    p.add_argument("hashtags")
    p.add_argument("--size-lo", type=int, default=10)
    p.add_argument("--size-hi", type=int, default=150)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--user-top-k", type=int, default=10)
    p.add_argument("--community-top-k", type=int, default=20)
    p.add_argument("--preserve-case", action="store_true",
                   help="keep hashtag case instead of folding it")
    p.set_defaults(func=cmd_hashtag_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        Path(args.output_dir).mkdir(parents=True, exist_ok=True)
        return args.func(args)
    except SystemExit_Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimitError, DeadlineExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (EdgeListParseError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, CliquecommError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
