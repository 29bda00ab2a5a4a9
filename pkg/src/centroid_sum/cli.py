"""Command-line interface: ``summarize``, ``evaluate``, ``tune`` and ``build-dev-clusters``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import __version__
from .corpus import (
    CorpusError,
    atomic_write,
    build_dev_clusters,
    load_articles,
    load_corpus,
    write_cluster_dir,
)
from .rouge import DEFAULT_NS, MissingReferenceError, evaluate_corpus, format_table
from .summarizer import PRESELECTIONS, VARIANTS, SummarizerConfig, summarize
from .text import STOPWORDS_ENV, load_stopwords
from .tuning import N_GRID, OBJECTIVES, Evaluator, tune_n, tune_rv

# built-in defaults, lowest precedence
DEFAULTS = {
    "variant": "global",
    "preselect": "none",
    "n": None,
    "r": 0.6,
    "v": 0.1,
    "limit": 100,
    "redundancy-filter": True,
    "stopwords": None,
    "jobs": 1,
}

PRECEDENCE = (
    "Settings are resolved as: command-line flag > --config file > built-in default. "
    "The config file holds flat 'key = value' lines whose keys are the long flag names "
    "without the leading dashes (e.g. 'variant = ranked', 'redundancy-filter = false'). "
    f"${STOPWORDS_ENV} replaces the bundled stopword list unless --stopwords is given."
)


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_CONVERTERS = {
    "n": int,
    "r": float,
    "v": float,
    "limit": int,
    "jobs": int,
    "redundancy-filter": _bool,
}


def read_config(path: str | Path) -> dict:
    settings = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lstrip("-").replace("_", "-")
        if key not in DEFAULTS:
            raise CliError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            settings[key] = _CONVERTERS.get(key, str)(value)
        except ValueError as exc:
            raise CliError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    return settings


def resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        settings.update(read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            settings[key] = value
    return settings


def config_from_settings(settings: dict) -> SummarizerConfig:
    try:
        return SummarizerConfig(
            variant=settings["variant"],
            redundancy_filter=settings["redundancy-filter"],
            r=settings["r"],
            v=settings["v"],
            preselection=settings["preselect"],
            n=settings["n"],
            word_limit=settings["limit"],
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _add_summarizer_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("summarizer")
    g.add_argument("--variant", choices=VARIANTS, help="selection strategy (default: global)")
    g.add_argument(
        "--preselect",
        choices=PRESELECTIONS,
        help="per-document candidate preselection (default: none)",
    )
    g.add_argument(
        "--n",
        type=int,
        help="sentences kept per document by preselection "
        "(default: 7 for n_first, 2 for n_best, 3 for new_tfidf)",
    )
    g.add_argument("--r", type=float, help="redundancy threshold, max pairwise cosine (default: 0.6)")
    g.add_argument("--v", type=float, help="fraction of centroid terms kept (default: 0.1)")
    g.add_argument("--limit", type=int, help="summary length limit in words (default: 100)")
    flt = g.add_mutually_exclusive_group()
    flt.add_argument(
        "--redundancy-filter",
        dest="redundancy_filter",
        action="store_const",
        const=True,
        help="enable the anti-redundancy filter (default: on)",
    )
    flt.add_argument(
        "--no-redundancy-filter",
        dest="redundancy_filter",
        action="store_const",
        const=False,
        help="disable the anti-redundancy filter",
    )
    _add_common_flags(p)


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file (see precedence rule above)")
    p.add_argument(
        "--stopwords",
        help=f"stopword list, one word per line (default: ${STOPWORDS_ENV} or the bundled SMART list)",
    )
    p.add_argument("--jobs", type=int, help="parallel worker processes (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="centroid-sum",
        description="Centroid-based multi-document extractive summarization. " + PRECEDENCE,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("summarize", help="summarize clusters", description=PRECEDENCE)
    p.add_argument("input", help="cluster directory (<id>/docs/*.txt) or corpus root")
    p.add_argument("-o", "--out", default="summaries", help="output directory (default: summaries)")
    p.add_argument(
        "--sidecar",
        action="store_true",
        help="also write <id>.meta.tsv with doc index, sentence index and step score per line",
    )
    _add_summarizer_flags(p)
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("evaluate", help="ROUGE-1/2/4 recall of summary directories")
    p.add_argument("corpus", help="corpus root or cluster directory holding refs/*.txt")
    p.add_argument("summaries", nargs="+", help="one directory of <cluster_id>.txt files per model")
    p.add_argument("--name", action="append", help="model name per summaries directory (default: dir name)")
    p.add_argument("--limit", type=int, default=100, help="truncate texts to this many words (default: 100)")
    p.add_argument("--no-stem", action="store_true", help="disable Porter stemming")
    p.add_argument("--output", help="write one TSV record per (model, cluster, n)")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes, one model each (default: 1)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("tune", help="grid search on a development corpus", description=PRECEDENCE)
    p.add_argument("corpus", help="development corpus root")
    p.add_argument(
        "--grid",
        choices=("rv", "n"),
        default="rv",
        help="rv: r and v over 0.0..1.0 with the ranked model; "
        "n: N in 1..10 with the global model (default: rv)",
    )
    p.add_argument(
        "--method",
        action="append",
        choices=PRESELECTIONS[1:],
        help="preselection method(s) for --grid n (default: all three)",
    )
    p.add_argument("--objective", choices=sorted(OBJECTIVES), default="rouge_1", help="(default: rouge_1)")
    p.add_argument("-o", "--out", default="grid.tsv", help="grid output file (default: grid.tsv)")
    _add_summarizer_flags(p)
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("build-dev-clusters", help="assemble development clusters from news articles")
    p.add_argument("articles", help="directory of article files with @highlight sections")
    p.add_argument("-o", "--out", required=True, help="output corpus root")
    p.add_argument("--clusters", type=int, default=50, help="number of clusters (default: 50)")
    p.add_argument("--size", type=int, default=10, help="documents per cluster (default: 10)")
    p.add_argument("--seed", type=int, default=13, help="random seed (default: 13)")
    p.add_argument("--marker", default="@highlight", help="highlight marker line (default: @highlight)")
    p.add_argument(
        "--lead-sentences",
        type=int,
        default=3,
        help="leading sentences compared for word overlap (default: 3)",
    )
    p.add_argument("--limit", type=int, default=100, help="reference length in words (default: 100)")
    p.add_argument(
        "--exclusive-members",
        action="store_true",
        help="use each article in at most one cluster (default: only seeds are exclusive)",
    )
    p.add_argument("--stopwords", help="stopword list used for the overlap measure")
    p.set_defaults(func=cmd_build_dev_clusters)
    return parser


def _summarize_one(job):
    cluster, cfg, stopwords = job
    result = summarize(cluster, cfg, stopwords)
    return cluster.cluster_id, result.text() + "\n", result.sidecar()


def _map(fn, items, jobs: int):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def cmd_summarize(args) -> int:
    settings = resolve_settings(args)
    cfg = config_from_settings(settings)
    timings = {}
    t0 = time.perf_counter()
    stopwords = load_stopwords(settings["stopwords"])
    clusters = load_corpus(args.input)
    timings["load"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    outputs = _map(_summarize_one, [(c, cfg, stopwords) for c in clusters], settings["jobs"])
    timings["summarize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    out = Path(args.out)
    for cluster_id, text, sidecar in outputs:
        atomic_write(out / f"{cluster_id}.txt", text)
        if args.sidecar:
            atomic_write(out / f"{cluster_id}.meta.tsv", sidecar)
    timings["write"] = time.perf_counter() - t0
    manifest = {
        "tool": "centroid-sum",
        "version": __version__,
        "command": "summarize",
        "config": cfg.as_dict(),
        "stopwords": settings["stopwords"] or _stopword_source(),
        "jobs": settings["jobs"],
        "input": str(Path(args.input).resolve()),
        "clusters": [c.cluster_id for c in clusters],
        "output": str(out.resolve()),
        "timings_s": timings,
    }
    atomic_write(out / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(outputs)} summaries to {out}")
    return 0


def _stopword_source() -> str:
    return os.environ.get(STOPWORDS_ENV) or "bundled:smart_stopwords.txt"


def _read_summaries(directory: Path) -> dict[str, str]:
    if not directory.is_dir():
        raise CliError(f"{directory}: not a directory")
    found = {p.stem: p.read_text(encoding="utf-8") for p in sorted(directory.glob("*.txt"))}
    if not found:
        raise CliError(f"{directory}: no <cluster_id>.txt summaries")
    return found


def _evaluate_one(job):
    directory, summaries, references, limit, stem = job
    try:
        return evaluate_corpus(summaries, references, DEFAULT_NS, limit, stem)
    except MissingReferenceError as exc:
        raise CliError(f"{directory}: {exc.args[0]}") from exc


def cmd_evaluate(args) -> int:
    names = args.name or []
    if names and len(names) != len(args.summaries):
        raise CliError("--name must be given once per summaries directory")
    references = {c.cluster_id: c.references for c in load_corpus(args.corpus)}
    jobs = []
    for i, directory in enumerate(args.summaries):
        directory = Path(directory)
        name = names[i] if names else directory.name
        jobs.append((directory, _read_summaries(directory), references, args.limit, not args.no_stem))
    rows = dict(zip((names or [Path(d).name for d in args.summaries]), _map(_evaluate_one, jobs, args.jobs)))
    sys.stdout.write(format_table(rows))
    if args.output:
        lines = ["model\tcluster\tn\trecall"]
        for name, report in rows.items():
            for cid, rep in report.clusters.items():
                for n in DEFAULT_NS:
                    lines.append(f"{name}\t{cid}\t{n}\t{rep[n]!r}")
        atomic_write(args.output, "\n".join(lines) + "\n")
    return 0


def cmd_tune(args) -> int:
    settings = resolve_settings(args)
    clusters = load_corpus(args.corpus)
    missing = [c.cluster_id for c in clusters if not c.references]
    if missing:
        raise CliError(f"no references for cluster(s): {', '.join(missing)}")
    evaluator = Evaluator(clusters, stopwords=load_stopwords(settings["stopwords"]))
    jobs = settings["jobs"]
    if args.grid == "rv":
        base = config_from_settings({**settings, "variant": "ranked", "preselect": "none", "n": None})
        result = tune_rv(evaluator, base, args.objective, jobs=jobs)
        tsv = result.to_tsv()
        best_lines = [_best_line(("r", "v"), result)]
    else:
        methods = args.method or list(PRESELECTIONS[1:])
        base = config_from_settings({**settings, "variant": "global"})
        header = "\t".join(("method", "n") + tuple(f"R-{n}" for n in DEFAULT_NS))
        lines = [header]
        best_lines = []
        for method in methods:
            result = tune_n(evaluator, base, method, args.objective, N_GRID, jobs)
            lines += [f"{method}\t{row}" for row in result.to_tsv().splitlines()[1:]]
            best_lines.append(f"{method}\t" + _best_line(("n",), result))
        tsv = "\n".join(lines) + "\n"
    atomic_write(args.out, tsv)
    for line in best_lines:
        print("best\t" + line)
    return 0


def _best_line(names, result) -> str:
    params = "\t".join(f"{k}={v}" for k, v in zip(names, result.best))
    rep = result.best_report
    return params + "\t" + "\t".join(f"R-{n}={rep.percent(n)}" for n in DEFAULT_NS)


def cmd_build_dev_clusters(args) -> int:
    stopwords = load_stopwords(args.stopwords)
    articles = load_articles(args.articles, args.marker)
    clusters = build_dev_clusters(
        articles,
        num_clusters=args.clusters,
        cluster_size=args.size,
        seed=args.seed,
        k=args.lead_sentences,
        word_limit=args.limit,
        exclusive_members=args.exclusive_members,
        stopwords=stopwords,
    )
    for cluster in clusters:
        write_cluster_dir(cluster, args.out)
    print(f"wrote {len(clusters)} clusters to {args.out}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, CorpusError, ValueError, OSError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
