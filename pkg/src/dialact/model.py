"""Corpus data model and constraint validator.

A corpus is an ordered list of dialogues; a dialogue holds ordered turns;
a turn carries a speaker, raw Arabic text and an overall dialogue act,
and may be segmented into utterances that each carry their own act.

Values are immutable after construction; editing is modeled as building
replacement values (``dataclasses.replace``). The containers themselves
do not enforce cross-field consistency, so that files produced by other
tools can be loaded and inspected; :func:`validate` reports every
violation instead of refusing to represent it. Validation rules:

=====  ========  =====================================================
rule   severity  meaning
=====  ========  =====================================================
R1     Error     act name does not resolve in the schema
R2     Error     is_segmented flag inconsistent with the segment list
R3     Error     segmented Opening turn has a segment act other than
                 Greeting or Self-Introduce
R4     Warning   segmented Opening turn lacks a Greeting or lacks a
                 Self-Introduce segment
R5     Error     segment texts do not re-concatenate to the turn text
R6     Error     identifier integrity: malformed or mismatched uid,
                 nonpositive id, duplicate did/uid/seg_id
R7     Warning   first turn of a dialogue is not an Opening
R8     Warning   last turn of a dialogue is not a Closing
=====  ========  =====================================================

The reserved act name ``UNANNOTATED`` marks imported turns pending
annotation; it deliberately fails R1 until replaced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum
from itertools import count
from typing import Iterable, Iterator, Sequence

from .schema import AnnotationSchema, DialogueAct, builtin_schema

__all__ = [
    "UNANNOTATED",
    "Corpus",
    "Dialogue",
    "Finding",
    "Modality",
    "Segment",
    "Severity",
    "SpeakerRole",
    "Turn",
    "ValidationReport",
    "make_uid",
    "normalize_text",
    "parse_uid",
    "segment_turn",
    "validate",
    "validate_turn",
]

UNANNOTATED = "UNANNOTATED"

RULE_UNKNOWN_ACT = "R1"
RULE_SEGMENT_FLAG = "R2"
RULE_OPENING_ACTS = "R3"
RULE_OPENING_PAIR = "R4"
RULE_SEGMENT_TEXT = "R5"
RULE_ID_INTEGRITY = "R6"
RULE_FIRST_TURN = "R7"
RULE_LAST_TURN = "R8"


class SpeakerRole(Enum):
    OPERATOR = "Operator"
    CUSTOMER = "Customer"

    def __str__(self) -> str:
        return self.value


class Modality(Enum):
    SPOKEN = "Spoken"
    CHAT = "Chat"

    def __str__(self) -> str:
        return self.value


class Severity(Enum):
    ERROR = "Error"
    WARNING = "Warning"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Segment:
    """One utterance of a segmented turn."""

    seg_id: int
    text: str
    act: str


@dataclass(frozen=True)
class Turn:
    """One speaker contribution, optionally segmented into utterances."""

    uid: str
    speaker: SpeakerRole
    text: str
    overall_act: str
    is_segmented: bool = False
    segments: tuple[Segment, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))


@dataclass(frozen=True)
class Dialogue:
    did: int
    modality: Modality
    source: str = ""
    turns: tuple[Turn, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", tuple(self.turns))


@dataclass(frozen=True)
class Corpus:
    dialogues: tuple[Dialogue, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "dialogues", tuple(self.dialogues))


@dataclass(frozen=True)
class Finding:
    severity: Severity
    path: str
    rule: str
    message: str

    def as_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "path": self.path,
            "rule": self.rule,
            "message": self.message,
        }


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "findings", tuple(self.findings))

    @property
    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity is Severity.ERROR)

    @property
    def warnings(self) -> tuple[Finding, ...]:
        return tuple(
            f for f in self.findings if f.severity is Severity.WARNING
        )

    @property
    def has_errors(self) -> bool:
        return any(f.severity is Severity.ERROR for f in self.findings)

    @property
    def is_valid(self) -> bool:
        return not self.findings

    def as_dict(self) -> dict:
        return {
            "findings": [f.as_dict() for f in self.findings],
            "num_errors": len(self.errors),
            "num_warnings": len(self.warnings),
        }


_UID_RE = re.compile(r"D(\d{2,})U(\d{2,})")


def make_uid(did: int, turn_index: int) -> str:
    """Build a turn identifier like ``D01U01`` (widths grow past 99)."""
    if did < 1:
        raise ValueError(f"dialogue id must be positive, got {did}")
    if turn_index < 1:
        raise ValueError(f"turn index must be positive, got {turn_index}")
    return f"D{did:02d}U{turn_index:02d}"


def parse_uid(uid: str) -> tuple[int, int]:
    """Inverse of :func:`make_uid`; raises ValueError on malformed input."""
    match = _UID_RE.fullmatch(uid)
    if match is None:
        raise ValueError(f"malformed turn identifier: {uid!r}")
    return int(match.group(1)), int(match.group(2))


def normalize_text(text: str) -> str:
    """Collapse runs of whitespace to single spaces and trim the ends."""
    return " ".join(text.split())


def segment_turn(
    turn: Turn,
    boundaries: Sequence[int],
    acts: Sequence[str],
    *,
    seg_ids: Iterable[int] | None = None,
    schema: AnnotationSchema | None = None,
) -> Turn:
    """Split a turn into utterances at whitespace token boundaries.

    ``boundaries`` counts tokens: a boundary of 2 splits after the second
    token. Tokens are maximal runs of non-whitespace characters. The
    number of acts must exceed the number of boundaries by one, and every
    act must resolve in the schema. ``seg_ids`` supplies the new segment
    ids (the caller owns corpus-wide uniqueness); it defaults to 1..n.
    """
    schema = schema or builtin_schema()
    if turn.is_segmented or turn.segments:
        raise ValueError(f"turn {turn.uid} is already segmented")
    tokens = turn.text.split()
    if not tokens:
        raise ValueError(f"turn {turn.uid} has no tokens to segment")
    bounds = list(boundaries)
    if len(acts) != len(bounds) + 1:
        raise ValueError(
            f"expected {len(bounds) + 1} acts for {len(bounds)} boundaries,"
            f" got {len(acts)}"
        )
    previous = 0
    for b in bounds:
        if not isinstance(b, int) or isinstance(b, bool):
            raise ValueError(f"boundary {b!r} is not a token offset")
        if b <= previous or b >= len(tokens):
            raise ValueError(
                f"boundary {b} is not a token boundary of a"
                f" {len(tokens)}-token turn"
            )
        previous = b
    resolved: list[DialogueAct] = []
    for name in acts:
        act = schema.lookup(name)
        if act is None:
            raise ValueError(f"unknown act: {name!r}")
        resolved.append(act)
    ids = _take_ids(seg_ids, len(acts))
    cuts = [0, *bounds, len(tokens)]
    segments = tuple(
        Segment(
            seg_id=ids[i],
            text=" ".join(tokens[cuts[i]:cuts[i + 1]]),
            act=resolved[i].name,
        )
        for i in range(len(acts))
    )
    return replace(turn, is_segmented=True, segments=segments)


def _take_ids(seg_ids: Iterable[int] | None, n: int) -> list[int]:
    source: Iterator[int] = iter(seg_ids if seg_ids is not None else count(1))
    ids = []
    for _ in range(n):
        try:
            ids.append(next(source))
        except StopIteration:
            raise ValueError(f"seg_ids ran out, needed {n}") from None
    return ids


def _dialogue_label(did: int) -> str:
    return f"D{did:02d}" if did >= 1 else f"D{did}"


def _turn_label(turn: Turn, did: int) -> str:
    try:
        _, index = parse_uid(turn.uid)
    except ValueError:
        return f"{_dialogue_label(did)}/{turn.uid}"
    return f"{_dialogue_label(did)}/U{index:02d}"


def _turn_findings(
    turn: Turn,
    path: str,
    schema: AnnotationSchema,
) -> list[Finding]:
    """Content rules R1 to R5 for one turn."""
    findings: list[Finding] = []
    opening = schema.lookup("Opening")
    greeting = schema.lookup("Greeting")
    self_introduce = schema.lookup("Self-Introduce")

    overall = schema.lookup(turn.overall_act)
    if overall is None:
        findings.append(
            Finding(
                Severity.ERROR,
                path,
                RULE_UNKNOWN_ACT,
                f"unknown act {turn.overall_act!r}",
            )
        )
    if turn.is_segmented != bool(turn.segments):
        detail = (
            "is_segmented is set but there are no segments"
            if turn.is_segmented
            else "is_segmented is unset but segments are present"
        )
        findings.append(
            Finding(Severity.ERROR, path, RULE_SEGMENT_FLAG, detail)
        )
    opening_rules = (
        overall is not None
        and overall == opening
        and greeting is not None
        and self_introduce is not None
    )
    for ordinal, segment in enumerate(turn.segments, start=1):
        seg_path = f"{path}/seg{ordinal}"
        act = schema.lookup(segment.act)
        if act is None:
            findings.append(
                Finding(
                    Severity.ERROR,
                    seg_path,
                    RULE_UNKNOWN_ACT,
                    f"unknown act {segment.act!r}",
                )
            )
        elif opening_rules and act not in (greeting, self_introduce):
            findings.append(
                Finding(
                    Severity.ERROR,
                    seg_path,
                    RULE_OPENING_ACTS,
                    f"segment of an Opening turn is tagged {act.name!r};"
                    " only Greeting and Self-Introduce are allowed",
                )
            )
    if opening_rules and turn.segments:
        present = {schema.lookup(s.act) for s in turn.segments}
        missing = [
            a.name for a in (greeting, self_introduce) if a not in present
        ]
        if missing:
            findings.append(
                Finding(
                    Severity.WARNING,
                    path,
                    RULE_OPENING_PAIR,
                    "segmented Opening has no "
                    + " and no ".join(missing)
                    + " segment",
                )
            )
    if turn.segments:
        joined = normalize_text(" ".join(s.text for s in turn.segments))
        if joined != normalize_text(turn.text):
            findings.append(
                Finding(
                    Severity.ERROR,
                    path,
                    RULE_SEGMENT_TEXT,
                    "segment texts do not re-concatenate to the turn text",
                )
            )
    return findings


def validate_turn(
    turn: Turn,
    schema: AnnotationSchema | None = None,
    *,
    did: int | None = None,
) -> ValidationReport:
    """Apply the content rules (R1 to R5) to a single turn."""
    schema = schema or builtin_schema()
    if did is None:
        try:
            did = parse_uid(turn.uid)[0]
        except ValueError:
            did = 0
    path = _turn_label(turn, did)
    return ValidationReport(tuple(_turn_findings(turn, path, schema)))


def validate(
    corpus: Corpus, schema: AnnotationSchema | None = None
) -> ValidationReport:
    """Check every rule over a whole corpus.

    Problems are findings, never exceptions; an empty report means the
    corpus satisfies every structural rule.
    """
    schema = schema or builtin_schema()
    opening = schema.lookup("Opening")
    closing = schema.lookup("Closing")
    findings: list[Finding] = []
    seen_dids: set[int] = set()
    seen_uids: set[str] = set()
    seen_seg_ids: set[int] = set()

    for dialogue in corpus.dialogues:
        dlabel = _dialogue_label(dialogue.did)
        if dialogue.did < 1:
            findings.append(
                Finding(
                    Severity.ERROR,
                    dlabel,
                    RULE_ID_INTEGRITY,
                    f"dialogue id must be positive, got {dialogue.did}",
                )
            )
        elif dialogue.did in seen_dids:
            findings.append(
                Finding(
                    Severity.ERROR,
                    dlabel,
                    RULE_ID_INTEGRITY,
                    f"duplicate dialogue id {dialogue.did}",
                )
            )
        seen_dids.add(dialogue.did)

        for turn in dialogue.turns:
            path = _turn_label(turn, dialogue.did)
            parsed = None
            try:
                parsed = parse_uid(turn.uid)
            except ValueError:
                findings.append(
                    Finding(
                        Severity.ERROR,
                        path,
                        RULE_ID_INTEGRITY,
                        f"malformed turn identifier {turn.uid!r}",
                    )
                )
            if parsed is not None and parsed[0] != dialogue.did:
                findings.append(
                    Finding(
                        Severity.ERROR,
                        path,
                        RULE_ID_INTEGRITY,
                        f"turn identifier {turn.uid!r} does not encode"
                        f" dialogue id {dialogue.did}",
                    )
                )
            if turn.uid in seen_uids:
                findings.append(
                    Finding(
                        Severity.ERROR,
                        path,
                        RULE_ID_INTEGRITY,
                        f"duplicate turn identifier {turn.uid!r}",
                    )
                )
            seen_uids.add(turn.uid)

            findings.extend(_turn_findings(turn, path, schema))

            for ordinal, segment in enumerate(turn.segments, start=1):
                seg_path = f"{path}/seg{ordinal}"
                if segment.seg_id < 1:
                    findings.append(
                        Finding(
                            Severity.ERROR,
                            seg_path,
                            RULE_ID_INTEGRITY,
                            f"segment id must be positive,"
                            f" got {segment.seg_id}",
                        )
                    )
                elif segment.seg_id in seen_seg_ids:
                    findings.append(
                        Finding(
                            Severity.ERROR,
                            seg_path,
                            RULE_ID_INTEGRITY,
                            f"duplicate segment id {segment.seg_id}",
                        )
                    )
                seen_seg_ids.add(segment.seg_id)

        if dialogue.turns:
            first = dialogue.turns[0]
            if opening is not None and schema.lookup(first.overall_act) != opening:
                findings.append(
                    Finding(
                        Severity.WARNING,
                        _turn_label(first, dialogue.did),
                        RULE_FIRST_TURN,
                        "first turn of a dialogue is expected to be an"
                        " Opening",
                    )
                )
            last = dialogue.turns[-1]
            if closing is not None and schema.lookup(last.overall_act) != closing:
                findings.append(
                    Finding(
                        Severity.WARNING,
                        _turn_label(last, dialogue.did),
                        RULE_LAST_TURN,
                        "last turn of a dialogue is expected to be a Closing",
                    )
                )

    return ValidationReport(tuple(findings))
