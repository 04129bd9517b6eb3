"""Command-line pipeline: segment, encode-toy, train, eval, stats, cost, rerun.

Stages communicate only through the documented JSONL files. Every run with a
file output writes a manifest beside it (<out>.manifest.json) recording the
resolved options; `rerun <manifest>` replays the run bit-for-bit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .costs import CostQuery, CostReport, costs, write_sweep_csv
from .embeddings import corpus_from_sentences, read_corpus, write_corpus
from .evaluation import dataset_stats, evaluate
from .segmenter import SegmentConfig, read_documents, read_sentences, write_sentences
from .trainer import TrainConfig, load_checkpoint, save_checkpoint, train


def _write_manifest(out_path: str, subcommand: str, options: dict) -> None:
    manifest = {
        "tool": "sentpool",
        "version": __version__,
        "subcommand": subcommand,
        "options": options,
    }
    path = Path(out_path + ".manifest.json")
    path.write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


def _open_out(path: str | None):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _cmd_segment(args) -> int:
    docs = read_documents(Path(args.input).read_text(encoding="utf-8").splitlines())
    if not docs:
        raise ValueError("no documents in input file")
    cfg = SegmentConfig(
        min_tokens=args.min_tokens, max_tokens=args.max_tokens, doc_token_cap=args.doc_cap
    )
    out, close = _open_out(args.out)
    try:
        n = write_sentences(docs, out, cfg)
    finally:
        if close:
            out.close()
    if args.out:
        _write_manifest(
            args.out,
            "segment",
            {
                "input": args.input,
                "out": args.out,
                "min_tokens": args.min_tokens,
                "max_tokens": args.max_tokens,
                "doc_cap": args.doc_cap,
            },
        )
    print(f"segmented {len(docs)} documents into {n} sentences", file=sys.stderr)
    return 0


def _cmd_encode_toy(args) -> int:
    records = read_sentences(Path(args.input).read_text(encoding="utf-8").splitlines())
    if not records:
        raise ValueError("no sentences in input file")
    corpus = corpus_from_sentences(records, dim=args.dim, seed=args.seed)
    out, close = _open_out(args.out)
    try:
        write_corpus(corpus, out)
    finally:
        if close:
            out.close()
    if args.out:
        _write_manifest(
            args.out,
            "encode-toy",
            {"input": args.input, "out": args.out, "dim": args.dim, "seed": args.seed},
        )
    print(
        f"encoded {len(corpus.documents)} documents at dimension {args.dim}", file=sys.stderr
    )
    return 0


def _cmd_train(args) -> int:
    with open(args.input, encoding="utf-8") as f:
        corpus = read_corpus(f)
    cfg = TrainConfig(
        learning_rate=args.lr,
        batch_size=args.batch_size,
        accumulation_steps=args.accum_steps,
        epochs=args.epochs,
        seed=args.seed,
        mode=args.mode,
    )
    head, clf, metrics = train(corpus, cfg)
    with open(args.out, "w", encoding="utf-8", newline="\n") as f:
        save_checkpoint(f, head, clf, cfg, corpus.label_count)
    metrics_path = args.out + ".metrics.jsonl"
    with open(metrics_path, "w", encoding="utf-8", newline="\n") as f:
        for m in metrics:
            f.write(
                json.dumps(
                    {
                        "epoch": m.epoch,
                        "mean_loss": m.mean_loss,
                        "accuracy": m.accuracy,
                        "seconds": m.seconds,
                    }
                )
                + "\n"
            )
    _write_manifest(
        args.out,
        "train",
        {
            "input": args.input,
            "out": args.out,
            "lr": args.lr,
            "batch_size": args.batch_size,
            "accum_steps": args.accum_steps,
            "epochs": args.epochs,
            "seed": args.seed,
            "mode": args.mode,
        },
    )
    last = metrics[-1]
    print(
        f"trained {cfg.epochs} epochs; final loss {last.mean_loss:.6f}, "
        f"accuracy {last.accuracy:.4f}; checkpoint {args.out}",
        file=sys.stderr,
    )
    return 0


def _cmd_eval(args) -> int:
    with open(args.checkpoint, encoding="utf-8") as f:
        head, clf, _, _, _ = load_checkpoint(f)
    with open(args.embeddings, encoding="utf-8") as f:
        corpus = read_corpus(f)
    report = evaluate(head, clf, corpus, threshold=args.threshold)
    if args.json:
        print(json.dumps(report.to_json_dict()))
    else:
        print(report.to_text())
    if args.out:
        Path(args.out).write_text(
            json.dumps(report.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )
        _write_manifest(
            args.out,
            "eval",
            {
                "checkpoint": args.checkpoint,
                "embeddings": args.embeddings,
                "threshold": args.threshold,
                "out": args.out,
                "json": args.json,
            },
        )
    return 0


def _cmd_stats(args) -> int:
    docs = read_documents(Path(args.input).read_text(encoding="utf-8").splitlines())
    stats = dataset_stats(docs, long_threshold=args.threshold)
    payload = json.dumps(stats.to_json_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        _write_manifest(
            args.out,
            "stats",
            {"input": args.input, "out": args.out, "threshold": args.threshold},
        )
    else:
        print(payload)
    return 0


def _parse_sweep(spec: str) -> list[CostQuery]:
    """Grammar: comma-separated field=value or field=start:stop[:step];
    ranged fields expand as a cross product, later fields varying fastest."""
    ranges: dict[str, list[int]] = {}
    for clause in spec.split(","):
        name, _, body = clause.partition("=")
        name = name.strip()
        if name not in ("t", "l", "g", "w", "c") or not body:
            raise ValueError(f"bad sweep clause {clause!r}: expected t|l|g|w|c=value[:stop[:step]]")
        parts = [int(p) for p in body.split(":")]
        if len(parts) == 1:
            ranges[name] = parts
        elif len(parts) in (2, 3):
            step = parts[2] if len(parts) == 3 else 1
            ranges[name] = list(range(parts[0], parts[1] + 1, step))
        else:
            raise ValueError(f"bad sweep range {body!r}")
    missing = [n for n in ("t", "l", "g", "w", "c") if n not in ranges]
    if missing:
        raise ValueError(f"sweep spec missing fields: {', '.join(missing)}")

    queries = []

    def expand(names, chosen):
        if not names:
            queries.append(CostQuery(**chosen))
            return
        for value in ranges[names[0]]:
            expand(names[1:], {**chosen, names[0]: value})

    expand(["t", "l", "g", "w", "c"], {})
    return queries


def _cmd_cost(args) -> int:
    if args.sweep:
        queries = _parse_sweep(args.sweep)
        out, close = _open_out(args.out)
        try:
            write_sweep_csv(queries, out)
        finally:
            if close:
                out.close()
        if args.out:
            _write_manifest(args.out, "cost", {"sweep": args.sweep, "out": args.out})
        return 0
    report = costs(CostQuery(t=args.t, l=args.l, g=args.g, w=args.w, c=args.c))
    payload = json.dumps(report.to_json_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        _write_manifest(
            args.out,
            "cost",
            {"t": args.t, "l": args.l, "g": args.g, "w": args.w, "c": args.c, "out": args.out},
        )
    else:
        print(payload)
    return 0


def _cmd_rerun(args) -> int:
    manifest = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
    sub = manifest["subcommand"]
    options = manifest["options"]
    argv = [sub]
    for key, value in options.items():
        if key in ("input", "checkpoint", "embeddings"):
            continue
        if isinstance(value, bool):
            if value:
                argv.append(f"--{key.replace('_', '-')}")
        else:
            argv.extend([f"--{key.replace('_', '-')}", str(value)])
    for key in ("input", "checkpoint", "embeddings"):
        if key in options:
            argv.insert(1, options[key])
    return main(argv)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentpool",
        description="Long-document classification via attention pooling over sentence embeddings.",
    )
    parser.add_argument("--version", action="version", version=f"sentpool {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("segment", help="split dataset JSONL into sentence JSONL")
    p.add_argument("input", help="dataset JSONL: one {id, text, label} per line")
    p.add_argument("--out", help="sentence JSONL destination (default stdout)")
    p.add_argument("--min-tokens", type=int, default=5)
    p.add_argument("--max-tokens", type=int, default=250)
    p.add_argument("--doc-cap", type=int, default=8192)
    p.set_defaults(fn=_cmd_segment)

    p = sub.add_parser("encode-toy", help="deterministically embed sentences (no model needed)")
    p.add_argument("input", help="sentence JSONL from `segment`")
    p.add_argument("--out", help="embeddings JSONL destination (default stdout)")
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_encode_toy)

    p = sub.add_parser("train", help="train attention head + classifier on an embedding corpus")
    p.add_argument("input", help="embeddings JSONL")
    p.add_argument("--out", required=True, help="checkpoint path (metrics written beside it)")
    p.add_argument("--lr", type=float, default=2e-5)
    p.add_argument("--batch-size", type=int, default=16)
    p.add_argument("--accum-steps", type=int, default=1)
    p.add_argument("--epochs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=["frozen", "head-with-input-grads"], default="frozen")
    p.set_defaults(fn=_cmd_train)

    p = sub.add_parser("eval", help="length-stratified accuracy of a checkpoint")
    p.add_argument("checkpoint")
    p.add_argument("embeddings", help="embeddings JSONL")
    p.add_argument("--threshold", type=int, default=512)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--json", action="store_true", help="print JSON instead of the table")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("stats", help="dataset statistics (token counts per document)")
    p.add_argument("input", help="dataset JSONL")
    p.add_argument("--threshold", type=int, default=512)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_stats)

    p = sub.add_parser("cost", help="attention-cost comparison across architectures")
    p.add_argument("--t", type=int, default=16)
    p.add_argument("--l", type=int, default=32)
    p.add_argument("--g", type=int, default=2)
    p.add_argument("--w", type=int, default=8)
    p.add_argument("--c", type=int, default=512)
    p.add_argument("--sweep", help="e.g. 't=1:100,l=20,g=2,w=4,c=512' -> CSV")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_cost)

    p = sub.add_parser("rerun", help="replay a run from its manifest")
    p.add_argument("manifest")
    p.set_defaults(fn=_cmd_rerun)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"sentpool {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
