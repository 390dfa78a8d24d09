"""Command-line interface.

Subcommands: ``schema``, ``validate``, ``stats``, ``translit``, ``kappa``,
``convert``, ``serve``. Data goes to stdout, diagnostics to stderr. Exit
status 0 means success, 1 means the corpus has Error-severity findings,
2 means a usage or I/O failure. The DIALACT_CORPUS environment variable
supplies the corpus directory when the argument is omitted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io as corpus_io
from .model import Modality, validate
from .schema import builtin_schema
from .stats import (
    aligned_label_pairs,
    cohen_kappa,
    compute_stats,
    extract_unit_labels,
)
from .translit import from_buckwalter, to_buckwalter

__all__ = ["EXIT_FAILURE", "EXIT_FINDINGS", "EXIT_OK", "main", "run"]

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_FAILURE = 2

ENV_CORPUS = "DIALACT_CORPUS"


class UsageFailure(Exception):
    """Usage or I/O failure surfaced with exit status 2."""


def _corpus_dir(args) -> Path:
    value = getattr(args, "corpus", None) or os.environ.get(ENV_CORPUS)
    if not value:
        raise UsageFailure(
            f"no corpus directory given and {ENV_CORPUS} is not set"
        )
    return Path(value)


def _load_corpus_file(path: Path):
    path = Path(path)
    if path.is_dir():
        return corpus_io.load_corpus_dir(path)
    return corpus_io.parse(path.read_bytes())


def _print_json(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=1))


# ---------------------------------------------------------------------------
# subcommands


def cmd_schema(args) -> int:
    schema = builtin_schema()
    if args.json:
        _print_json(corpus_io.schema_to_jsonable(schema))
    else:
        for act in schema.acts:
            print(f"{act.name}\t{act.dimension.value}")
    return EXIT_OK


def cmd_validate(args) -> int:
    corpus = corpus_io.load_corpus_dir(_corpus_dir(args))
    report = validate(corpus)
    if args.json:
        _print_json(report.as_dict())
    else:
        for finding in report.findings:
            print(
                f"[{finding.severity.value}] {finding.rule}"
                f" {finding.path}: {finding.message}"
            )
        print(
            f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)"
        )
    return EXIT_FINDINGS if report.has_errors else EXIT_OK


def cmd_stats(args) -> int:
    corpus = corpus_io.load_corpus_dir(_corpus_dir(args))
    stats = compute_stats(corpus)
    if args.json:
        _print_json(stats.as_dict())
        return EXIT_OK
    rows = [
        ("dialogues", f"{stats.num_dialogues}"
         f" (spoken {stats.num_spoken}, chat {stats.num_chat})"),
        ("turns", str(stats.num_turns)),
        ("utterances", str(stats.num_utterances)),
        ("avg words/turn", stats.as_dict()["avg_words_per_turn_display"]),
        (
            "avg words/utterance",
            stats.as_dict()["avg_words_per_utterance_display"],
        ),
    ]
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        print(f"{label:<{width}}  {value}")
    if stats.act_histogram:
        print()
        print("act histogram:")
        ordered = sorted(
            stats.act_histogram.items(), key=lambda kv: (-kv[1], kv[0])
        )
        name_width = max(len(name) for name, _ in ordered)
        for name, count in ordered:
            print(f"  {name:<{name_width}}  {count}")
    return EXIT_OK


def cmd_translit(args) -> int:
    stream = getattr(sys.stdin, "buffer", None)
    if stream is not None:
        text = stream.read().decode("utf-8-sig")
    else:
        text = sys.stdin.read()
    result = to_buckwalter(text) if args.to_bw else from_buckwalter(text)
    sys.stdout.write(result.text)
    sys.stdout.flush()
    if result.out_of_alphabet:
        chars = " ".join(repr(c) for c in result.unmapped)
        print(
            f"note: {len(result.unmapped)} character(s) outside the"
            f" transliteration alphabet passed through unchanged: {chars}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_kappa(args) -> int:
    units_a = extract_unit_labels(_load_corpus_file(args.a))
    units_b = extract_unit_labels(_load_corpus_file(args.b))
    labels_a, labels_b = aligned_label_pairs(units_a, units_b)
    if not labels_a:
        raise UsageFailure("the two annotations share no aligned units")
    dropped = len(units_a) + len(units_b) - 2 * len(labels_a)
    if dropped:
        print(
            f"note: {dropped} unit(s) present in only one annotation were"
            " ignored",
            file=sys.stderr,
        )
    report = cohen_kappa(labels_a, labels_b)
    if args.json:
        _print_json(report.as_dict())
        return EXIT_OK
    data = report.as_dict()
    print(f"items     {report.n_items}")
    print(f"observed  {data['observed_agreement']:.4f}")
    print(f"expected  {data['expected_agreement']:.4f}")
    print(f"kappa     {data['kappa']:.4f}")
    return EXIT_OK


def cmd_convert(args) -> int:
    choice = args.modality or (
        "spoken" if args.source_format == "trs" else "chat"
    )
    modality = Modality.SPOKEN if choice == "spoken" else Modality.CHAT
    data = Path(args.infile).read_bytes()
    corpus = corpus_io.import_transcript(
        data,
        modality,
        fmt=args.source_format,
        did=args.did,
        source=args.source or Path(args.infile).stem,
    )
    out = Path(args.outfile)
    if out.suffix == ".json":
        corpus_io.atomic_write(
            out, corpus_io.serialize(corpus, require_valid=False)
        )
    else:
        corpus_io.save_corpus_dir(corpus, out)
    turns = sum(len(d.turns) for d in corpus.dialogues)
    print(f"imported {turns} turn(s) into {out}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(_corpus_dir(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dialact",
        description="Annotation toolkit for Arabic inquiry-answer dialogues.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schema", help="list the dialogue-act inventory")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_schema)

    p = sub.add_parser("validate", help="check a corpus directory")
    p.add_argument("corpus", nargs="?", help=f"corpus directory (default ${ENV_CORPUS})")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stats", help="corpus statistics")
    p.add_argument("corpus", nargs="?", help=f"corpus directory (default ${ENV_CORPUS})")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("translit", help="filter stdin to stdout")
    direction = p.add_mutually_exclusive_group(required=True)
    direction.add_argument(
        "--to-bw", action="store_true", help="Arabic to Buckwalter"
    )
    direction.add_argument(
        "--from-bw", action="store_true", help="Buckwalter to Arabic"
    )
    p.set_defaults(func=cmd_translit)

    p = sub.add_parser(
        "kappa", help="inter-annotator agreement between two annotations"
    )
    p.add_argument("a", help="first annotation (corpus JSON file or directory)")
    p.add_argument("b", help="second annotation of the same corpus")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("convert", help="import a transcript as a corpus")
    p.add_argument(
        "--from",
        dest="source_format",
        choices=["trs", "txt"],
        required=True,
        help="transcript format",
    )
    p.add_argument(
        "--to", dest="target_format", choices=["json"], default="json"
    )
    p.add_argument(
        "--modality",
        choices=["spoken", "chat"],
        help="dialogue modality (default: spoken for trs, chat for txt)",
    )
    p.add_argument("--did", type=int, default=1, help="dialogue id")
    p.add_argument("--source", help="provenance note (default: file stem)")
    p.add_argument("infile")
    p.add_argument(
        "outfile",
        help="output corpus directory, or a .json file for a single document",
    )
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    p.add_argument(
        "--corpus", help=f"corpus directory (default ${ENV_CORPUS})"
    )
    p.add_argument("--port", type=int, default=8077)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Dispatch one invocation; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (corpus_io.ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
