"""Corpus serialization: canonical JSON documents, corpus directories,
Transcriber-style transcript import, schema export.

The JSON wire format keeps the annotation tool's historical field
spellings: ``UID``, ``DID``, ``Person``, ``Utterance``, ``Over_ALL_DA``,
``isSegmented`` and, per segment, ``SegID`` / ``Segment`` / ``SDA``. A
document looks like::

    {
      "format_version": "1.0",
      "schema_name": "arabic-inquiry-answer",
      "dialogues": [
        {
          "DID": 1,
          "modality": "Spoken",
          "source": "bank",
          "turns": [
            {
              "UID": "D01U01",
              "Person": "Operator",
              "Utterance": "...",
              "Over_ALL_DA": "Opening",
              "isSegmented": true,
              "segments": [
                {"SegID": 1, "Segment": "...", "SDA": "Greeting"}
              ]
            }
          ]
        }
      ]
    }

Serialization is canonical (UTF-8, keys sorted, fixed indentation, no
ASCII escaping of Arabic), so equal corpora produce identical bytes. A
corpus on disk is a directory of one ``D{did}.json`` single-dialogue
document per dialogue; writes are atomic (temp file, then rename).

Parse errors carry a JSON-pointer-style path to the offending element.
Act names are canonicalized against the schema on input; unknown names
are rejected except for the reserved placeholder ``UNANNOTATED``, which
marks imported turns that still await annotation.
"""

from __future__ import annotations

import json
import os
import re
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Any

from .model import (
    UNANNOTATED,
    Corpus,
    Dialogue,
    Modality,
    Segment,
    SpeakerRole,
    Turn,
    make_uid,
    normalize_text,
    validate,
)
from .schema import AnnotationSchema, builtin_schema

__all__ = [
    "FORMAT_VERSION",
    "InvalidCorpusError",
    "ParseError",
    "atomic_write",
    "canonical_json_bytes",
    "dialogue_document",
    "import_transcript",
    "load_corpus_dir",
    "parse",
    "save_corpus_dir",
    "schema_to_jsonable",
    "serialize",
    "turn_to_wire",
]

FORMAT_VERSION = "1.0"

_DIALOGUE_FILE_RE = re.compile(r"D(\d+)\.json")

_TOP_KEYS = {"format_version", "schema_name", "dialogues"}
_DIALOGUE_KEYS = {"DID", "modality", "source", "turns"}
_TURN_KEYS = {"UID", "Person", "Utterance", "Over_ALL_DA", "isSegmented", "segments"}
_SEGMENT_KEYS = {"SegID", "Segment", "SDA"}


class ParseError(ValueError):
    """Malformed or inconsistent input; ``path`` locates the element."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class InvalidCorpusError(ValueError):
    """Refusal to serialize a corpus that has validation errors."""

    def __init__(self, report):
        self.report = report
        lines = "; ".join(
            f"{f.rule} {f.path}: {f.message}" for f in report.errors[:5]
        )
        more = len(report.errors) - 5
        if more > 0:
            lines += f"; and {more} more"
        super().__init__(f"corpus has validation errors: {lines}")


def canonical_json_bytes(obj: Any) -> bytes:
    """Deterministic UTF-8 rendering: sorted keys, indent 1, no escapes."""
    return (
        json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=1) + "\n"
    ).encode("utf-8")


def atomic_write(path: Path, data: bytes) -> None:
    """Write via a temp file in the same directory, then rename over."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(
        dir=path.parent, prefix=path.name + ".", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# corpus -> document


def turn_to_wire(turn: Turn) -> dict:
    return {
        "UID": turn.uid,
        "Person": turn.speaker.value,
        "Utterance": turn.text,
        "Over_ALL_DA": turn.overall_act,
        "isSegmented": turn.is_segmented,
        "segments": [
            {"SegID": s.seg_id, "Segment": s.text, "SDA": s.act}
            for s in turn.segments
        ],
    }


def _dialogue_to_wire(dialogue: Dialogue) -> dict:
    return {
        "DID": dialogue.did,
        "modality": dialogue.modality.value,
        "source": dialogue.source,
        "turns": [turn_to_wire(t) for t in dialogue.turns],
    }


def _document(dialogues, schema: AnnotationSchema) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "schema_name": schema.name,
        "dialogues": [_dialogue_to_wire(d) for d in dialogues],
    }


def dialogue_document(dialogue: Dialogue, schema: AnnotationSchema | None = None) -> bytes:
    """Canonical single-dialogue document, as stored in a corpus directory."""
    schema = schema or builtin_schema()
    return canonical_json_bytes(_document([dialogue], schema))


def serialize(
    corpus: Corpus,
    schema: AnnotationSchema | None = None,
    *,
    require_valid: bool = True,
) -> bytes:
    """Render a corpus to canonical document bytes.

    With ``require_valid`` (the default) a corpus carrying validation
    errors is refused. Pass ``require_valid=False`` for work-in-progress
    corpora, e.g. freshly imported transcripts whose turns are still
    UNANNOTATED.
    """
    schema = schema or builtin_schema()
    if require_valid:
        report = validate(corpus, schema)
        if report.has_errors:
            raise InvalidCorpusError(report)
    return canonical_json_bytes(_document(corpus.dialogues, schema))


# ---------------------------------------------------------------------------
# document -> corpus


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8-sig")
    return data.lstrip("﻿")


def _expect_object(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ParseError(path, f"expected an object, got {type(value).__name__}")
    return value


def _expect_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(path, f"expected a list, got {type(value).__name__}")
    return value


def _required(obj: dict, key: str, path: str):
    if key not in obj:
        raise ParseError(f"{path}/{key}", "missing required field")
    return obj[key]


def _check_unknown(obj: dict, allowed: set, path: str, strict: bool) -> None:
    if not strict:
        return
    for key in obj:
        if key not in allowed:
            raise ParseError(f"{path}/{key}", "unknown field")


def _string(value, path: str, *, nonempty: bool = False) -> str:
    if not isinstance(value, str):
        raise ParseError(path, f"expected a string, got {type(value).__name__}")
    if nonempty and not value.strip():
        raise ParseError(path, "must be a nonempty string")
    return value


def _integer(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(path, f"expected an integer, got {value!r}")
    return value


def _boolean(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise ParseError(path, f"expected a boolean, got {value!r}")
    return value


def _act_name(value, path: str, schema: AnnotationSchema) -> str:
    name = _string(value, path, nonempty=True)
    if name == UNANNOTATED:
        return UNANNOTATED
    act = schema.lookup(name)
    if act is None:
        raise ParseError(path, f"unknown act {name!r}")
    return act.name


def _parse_segment(obj, path: str, schema: AnnotationSchema, strict: bool) -> Segment:
    obj = _expect_object(obj, path)
    _check_unknown(obj, _SEGMENT_KEYS, path, strict)
    return Segment(
        seg_id=_integer(_required(obj, "SegID", path), f"{path}/SegID"),
        text=_string(
            _required(obj, "Segment", path), f"{path}/Segment", nonempty=True
        ),
        act=_act_name(_required(obj, "SDA", path), f"{path}/SDA", schema),
    )


_SPEAKERS = {role.value: role for role in SpeakerRole}
_MODALITIES = {m.value: m for m in Modality}


def _parse_turn(obj, path: str, schema: AnnotationSchema, strict: bool) -> Turn:
    obj = _expect_object(obj, path)
    _check_unknown(obj, _TURN_KEYS, path, strict)
    person = _string(_required(obj, "Person", path), f"{path}/Person")
    if person not in _SPEAKERS:
        raise ParseError(f"{path}/Person", f"unknown speaker role {person!r}")
    segments = tuple(
        _parse_segment(seg, f"{path}/segments/{i}", schema, strict)
        for i, seg in enumerate(
            _expect_list(_required(obj, "segments", path), f"{path}/segments")
        )
    )
    return Turn(
        uid=_string(_required(obj, "UID", path), f"{path}/UID", nonempty=True),
        speaker=_SPEAKERS[person],
        text=_string(
            _required(obj, "Utterance", path), f"{path}/Utterance", nonempty=True
        ),
        overall_act=_act_name(
            _required(obj, "Over_ALL_DA", path), f"{path}/Over_ALL_DA", schema
        ),
        is_segmented=_boolean(
            _required(obj, "isSegmented", path), f"{path}/isSegmented"
        ),
        segments=segments,
    )


def _parse_dialogue(obj, path: str, schema: AnnotationSchema, strict: bool) -> Dialogue:
    obj = _expect_object(obj, path)
    _check_unknown(obj, _DIALOGUE_KEYS, path, strict)
    modality = _string(_required(obj, "modality", path), f"{path}/modality")
    if modality not in _MODALITIES:
        raise ParseError(f"{path}/modality", f"unknown modality {modality!r}")
    return Dialogue(
        did=_integer(_required(obj, "DID", path), f"{path}/DID"),
        modality=_MODALITIES[modality],
        source=_string(_required(obj, "source", path), f"{path}/source"),
        turns=tuple(
            _parse_turn(t, f"{path}/turns/{i}", schema, strict)
            for i, t in enumerate(
                _expect_list(_required(obj, "turns", path), f"{path}/turns")
            )
        ),
    )


def parse(
    data: bytes | str,
    schema: AnnotationSchema | None = None,
    *,
    strict: bool = True,
) -> Corpus:
    """Parse corpus document bytes.

    Strict mode (the default) rejects unknown fields; the lenient mode
    ignores them. Everything else (missing fields, type errors, unknown
    acts other than UNANNOTATED, unsupported versions) is always an
    error. A UTF-8 BOM is tolerated.
    """
    schema = schema or builtin_schema()
    try:
        doc = json.loads(_decode(data))
    except json.JSONDecodeError as exc:
        raise ParseError("/", f"malformed JSON: {exc}") from exc
    doc = _expect_object(doc, "/")
    _check_unknown(doc, _TOP_KEYS, "", strict)
    version = _string(_required(doc, "format_version", ""), "/format_version")
    if version != FORMAT_VERSION:
        raise ParseError(
            "/format_version",
            f"unsupported format version {version!r},"
            f" expected {FORMAT_VERSION!r}",
        )
    name = _string(_required(doc, "schema_name", ""), "/schema_name")
    if name != schema.name:
        raise ParseError(
            "/schema_name", f"unknown schema {name!r}, expected {schema.name!r}"
        )
    dialogues = tuple(
        _parse_dialogue(d, f"/dialogues/{i}", schema, strict)
        for i, d in enumerate(
            _expect_list(_required(doc, "dialogues", ""), "/dialogues")
        )
    )
    return Corpus(dialogues=dialogues)


# ---------------------------------------------------------------------------
# corpus directories


def save_corpus_dir(
    corpus: Corpus, directory: Path, schema: AnnotationSchema | None = None
) -> None:
    """Write one D{did}.json per dialogue (atomically, no validation gate)."""
    schema = schema or builtin_schema()
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    dids = [d.did for d in corpus.dialogues]
    if len(set(dids)) != len(dids):
        raise ValueError("corpus has duplicate dialogue ids")
    for dialogue in corpus.dialogues:
        atomic_write(
            directory / f"D{dialogue.did}.json",
            dialogue_document(dialogue, schema),
        )


def load_corpus_dir(
    directory: Path,
    schema: AnnotationSchema | None = None,
    *,
    strict: bool = True,
) -> Corpus:
    """Read every D{did}.json in a directory, ordered by dialogue id."""
    schema = schema or builtin_schema()
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {directory}")
    entries: list[tuple[int, Path]] = []
    for child in directory.iterdir():
        match = _DIALOGUE_FILE_RE.fullmatch(child.name)
        if match:
            entries.append((int(match.group(1)), child))
    dialogues = []
    for did, path in sorted(entries):
        corpus = parse(path.read_bytes(), schema, strict=strict)
        if len(corpus.dialogues) != 1:
            raise ParseError(
                str(path),
                f"expected exactly one dialogue, found {len(corpus.dialogues)}",
            )
        dialogue = corpus.dialogues[0]
        if dialogue.did != did:
            raise ParseError(
                str(path),
                f"file is named for dialogue {did} but contains"
                f" dialogue {dialogue.did}",
            )
        dialogues.append(dialogue)
    return Corpus(dialogues=tuple(dialogues))


# ---------------------------------------------------------------------------
# transcript import


def import_transcript(
    data: bytes | str,
    modality: Modality,
    *,
    fmt: str | None = None,
    did: int = 1,
    source: str = "",
) -> Corpus:
    """Turn a transcript into a single-dialogue corpus awaiting annotation.

    Accepts a Transcriber-style XML export (Turn elements with speaker
    attributes, resolved through the Speakers table when present) or a
    plain-text fallback of ``SPEAKER<TAB>text`` lines. Every imported
    turn gets the UNANNOTATED placeholder act, turns are numbered
    densely from 1, and whitespace-only turns are dropped.
    """
    if fmt is None:
        probe = data if isinstance(data, bytes) else data.encode("utf-8")
        fmt = "trs" if probe.lstrip(b"\xef\xbb\xbf \t\r\n").startswith(b"<") else "txt"
    if fmt == "trs":
        turns = _turns_from_xml(data, did)
    elif fmt == "txt":
        turns = _turns_from_text(_decode(data), did)
    else:
        raise ValueError(f"unknown transcript format {fmt!r}")
    if not turns:
        raise ParseError("/", "transcript contains no usable turns")
    return Corpus(
        dialogues=(
            Dialogue(did=did, modality=modality, source=source, turns=tuple(turns)),
        )
    )


def _speaker_from_code(code: str, path: str) -> SpeakerRole:
    for role in SpeakerRole:
        if code.strip().casefold() == role.value.casefold():
            return role
    raise ParseError(path, f"unknown speaker code {code!r}")


def _turns_from_xml(data: bytes | str, did: int) -> list[Turn]:
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise ParseError("/", f"malformed XML: {exc}") from exc
    names = {}
    for speaker in root.iter("Speaker"):
        spk_id = speaker.get("id")
        if spk_id:
            names[spk_id] = speaker.get("name", spk_id)
    turns = []
    for index, element in enumerate(root.iter("Turn")):
        path = f"/Turn[{index}]"
        code = element.get("speaker")
        if not code:
            raise ParseError(path, "turn has no speaker attribute")
        role = _speaker_from_code(names.get(code, code), path)
        text = normalize_text("".join(element.itertext()))
        if not text:
            continue
        turns.append(
            Turn(
                uid=make_uid(did, len(turns) + 1),
                speaker=role,
                text=text,
                overall_act=UNANNOTATED,
            )
        )
    return turns


def _turns_from_text(text: str, did: int) -> list[Turn]:
    turns = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        path = f"/line{lineno}"
        code, sep, content = line.partition("\t")
        if not sep:
            raise ParseError(path, "expected SPEAKER<TAB>text")
        role = _speaker_from_code(code, path)
        content = normalize_text(content)
        if not content:
            raise ParseError(path, "turn text is empty")
        turns.append(
            Turn(
                uid=make_uid(did, len(turns) + 1),
                speaker=role,
                text=content,
                overall_act=UNANNOTATED,
            )
        )
    return turns


# ---------------------------------------------------------------------------
# schema export


def schema_to_jsonable(schema: AnnotationSchema | None = None) -> list[dict]:
    """The act inventory as plain data, ready for JSON."""
    schema = schema or builtin_schema()
    return [
        {
            "name": act.name,
            "dimension": act.dimension.value,
            "definition": act.definition,
            "subfunctions": list(act.subfunctions),
        }
        for act in schema.acts
    ]
