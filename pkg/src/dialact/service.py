"""HTTP annotation service backing the browser UI.

Endpoints (JSON over HTTP, UTF-8, CORS open for local use):

    GET  /schema                        act inventory
    GET  /dialogues                     id, modality, source, turn count
    GET  /dialogues/{did}               full dialogue, turns carry revisions
    GET  /dialogues/{did}/turns/{uid}   one turn with its revision token
    PUT  /dialogues/{did}/turns/{uid}   apply an annotation update
    GET  /stats                         corpus statistics
    GET  /validate                      validation report
    GET  /translit                      romanization passthrough for tooltips

Updates are optimistic-concurrency guarded: every turn has a revision
token (content hash); a PUT must echo the token it read and gets 409 on
mismatch. An update that breaks the content rules (unknown act,
flag/segment mismatch, bad Opening decomposition, broken concatenation)
is rejected with 422 and the findings. Accepted updates are persisted
atomically to D{did}.json before they become visible; a rejected update
changes nothing. Segment ids come from a monotone counter persisted next
to the dialogue files.
"""

from __future__ import annotations

import hashlib
import json
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from . import io as corpus_io
from .model import (
    Corpus,
    Dialogue,
    Segment,
    Severity,
    Turn,
    validate,
    validate_turn,
)
from .schema import AnnotationSchema, builtin_schema
from .stats import compute_stats
from .translit import from_buckwalter, to_buckwalter

__all__ = [
    "AnnotationUpdate",
    "ConflictError",
    "CorpusStore",
    "SegmentUpdate",
    "TurnNotFound",
    "UpdateRejected",
    "create_app",
    "turn_revision",
]

COUNTER_FILE = "segid_counter.json"


class SegmentUpdate(BaseModel):
    model_config = ConfigDict(extra="forbid")

    text: str
    act: str


class AnnotationUpdate(BaseModel):
    model_config = ConfigDict(extra="forbid")

    overall_act: str
    is_segmented: bool
    segments: list[SegmentUpdate] = []
    revision: str


class TurnNotFound(KeyError):
    pass


class ConflictError(Exception):
    def __init__(self, current_revision: str):
        self.current_revision = current_revision
        super().__init__("revision mismatch")


class UpdateRejected(Exception):
    def __init__(self, report):
        self.report = report
        super().__init__("update fails validation")


def turn_revision(turn: Turn) -> str:
    """Content hash used as the optimistic-concurrency token."""
    payload = json.dumps(
        corpus_io.turn_to_wire(turn), ensure_ascii=False, sort_keys=True
    ).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()[:16]


class CorpusStore:
    """In-memory corpus backed by a corpus directory.

    Reads see immutable snapshots; mutations are serialized per dialogue
    and hit disk before they become visible in memory.
    """

    def __init__(self, directory: Path, schema: AnnotationSchema | None = None):
        self.directory = Path(directory)
        self.schema = schema or builtin_schema()
        corpus = corpus_io.load_corpus_dir(self.directory, self.schema)
        self._dialogues: dict[int, Dialogue] = {
            d.did: d for d in corpus.dialogues
        }
        self._lock = threading.Lock()
        self._dialogue_locks = {did: threading.Lock() for did in self._dialogues}
        self._counter_lock = threading.Lock()
        self._next_seg_id = self._load_counter()

    # -- counter ---------------------------------------------------------

    def _counter_path(self) -> Path:
        return self.directory / COUNTER_FILE

    def _load_counter(self) -> int:
        highest = 0
        for dialogue in self._dialogues.values():
            for turn in dialogue.turns:
                for segment in turn.segments:
                    highest = max(highest, segment.seg_id)
        path = self._counter_path()
        if path.exists():
            persisted = int(json.loads(path.read_text("utf-8"))["next_seg_id"])
            # hand-edited dialogue files may outrun a stale counter
            return max(persisted, highest + 1)
        return highest + 1

    def _allocate_seg_ids(self, n: int) -> list[int]:
        with self._counter_lock:
            ids = list(range(self._next_seg_id, self._next_seg_id + n))
            next_id = self._next_seg_id + n
            corpus_io.atomic_write(
                self._counter_path(),
                json.dumps({"next_seg_id": next_id}).encode("utf-8"),
            )
            self._next_seg_id = next_id
        return ids

    # -- reads -----------------------------------------------------------

    def snapshot(self) -> Corpus:
        with self._lock:
            dialogues = tuple(
                self._dialogues[did] for did in sorted(self._dialogues)
            )
        return Corpus(dialogues=dialogues)

    def dialogue(self, did: int) -> Dialogue | None:
        with self._lock:
            return self._dialogues.get(did)

    def turn(self, did: int, uid: str) -> Turn | None:
        dialogue = self.dialogue(did)
        if dialogue is None:
            return None
        for turn in dialogue.turns:
            if turn.uid == uid:
                return turn
        return None

    # -- writes ----------------------------------------------------------

    def update_turn(self, did: int, uid: str, update: AnnotationUpdate) -> Turn:
        lock = self._dialogue_locks.get(did)
        if lock is None:
            raise TurnNotFound(uid)
        with lock:
            dialogue = self._dialogues[did]
            index = next(
                (i for i, t in enumerate(dialogue.turns) if t.uid == uid), None
            )
            if index is None:
                raise TurnNotFound(uid)
            current = dialogue.turns[index]
            if update.revision != turn_revision(current):
                raise ConflictError(turn_revision(current))

            candidate = self._build_turn(current, update, placeholder_ids=True)
            report = validate_turn(candidate, self.schema, did=did)
            if report.has_errors:
                raise UpdateRejected(report)

            stored = self._build_turn(
                current,
                update,
                seg_ids=self._allocate_seg_ids(len(update.segments)),
            )
            turns = list(dialogue.turns)
            turns[index] = stored
            new_dialogue = Dialogue(
                did=dialogue.did,
                modality=dialogue.modality,
                source=dialogue.source,
                turns=tuple(turns),
            )
            corpus_io.atomic_write(
                self.directory / f"D{did}.json",
                corpus_io.dialogue_document(new_dialogue, self.schema),
            )
            with self._lock:
                self._dialogues[did] = new_dialogue
            return stored

    def _build_turn(
        self,
        current: Turn,
        update: AnnotationUpdate,
        *,
        placeholder_ids: bool = False,
        seg_ids: list[int] | None = None,
    ) -> Turn:
        if placeholder_ids:
            seg_ids = list(range(1, len(update.segments) + 1))
        assert seg_ids is not None
        segments = tuple(
            Segment(
                seg_id=seg_ids[i],
                text=seg.text,
                act=self._canonical_act(seg.act),
            )
            for i, seg in enumerate(update.segments)
        )
        return Turn(
            uid=current.uid,
            speaker=current.speaker,
            text=current.text,
            overall_act=self._canonical_act(update.overall_act),
            is_segmented=update.is_segmented,
            segments=segments,
        )

    def _canonical_act(self, name: str) -> str:
        act = self.schema.lookup(name)
        return act.name if act is not None else name


# ---------------------------------------------------------------------------
# application


def _wire_turn(turn: Turn) -> dict:
    payload = corpus_io.turn_to_wire(turn)
    payload["revision"] = turn_revision(turn)
    return payload


def create_app(
    corpus_dir: Path, schema: AnnotationSchema | None = None
) -> FastAPI:
    """Build the service over an existing, parseable corpus directory."""
    store = CorpusStore(corpus_dir, schema)
    app = FastAPI(title="dialact annotation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "PUT", "OPTIONS"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.get("/schema")
    def get_schema():
        return corpus_io.schema_to_jsonable(store.schema)

    @app.get("/dialogues")
    def list_dialogues():
        corpus = store.snapshot()
        return [
            {
                "did": d.did,
                "modality": d.modality.value,
                "source": d.source,
                "num_turns": len(d.turns),
            }
            for d in corpus.dialogues
        ]

    @app.get("/dialogues/{did}")
    def get_dialogue(did: int):
        dialogue = store.dialogue(did)
        if dialogue is None:
            raise HTTPException(404, f"no dialogue {did}")
        return {
            "DID": dialogue.did,
            "modality": dialogue.modality.value,
            "source": dialogue.source,
            "turns": [_wire_turn(t) for t in dialogue.turns],
        }

    @app.get("/dialogues/{did}/turns/{uid}")
    def get_turn(did: int, uid: str):
        turn = store.turn(did, uid)
        if turn is None:
            raise HTTPException(404, f"no turn {uid} in dialogue {did}")
        return _wire_turn(turn)

    @app.put("/dialogues/{did}/turns/{uid}")
    def put_turn(did: int, uid: str, update: AnnotationUpdate):
        try:
            stored = store.update_turn(did, uid, update)
        except TurnNotFound:
            raise HTTPException(404, f"no turn {uid} in dialogue {did}")
        except ConflictError as exc:
            return JSONResponse(
                status_code=409,
                content={
                    "error": "revision mismatch",
                    "current_revision": exc.current_revision,
                },
            )
        except UpdateRejected as exc:
            return JSONResponse(
                status_code=422,
                content={
                    "findings": [f.as_dict() for f in exc.report.findings]
                },
            )
        payload = _wire_turn(stored)
        warnings = [
            f.as_dict()
            for f in validate_turn(stored, store.schema, did=did).findings
            if f.severity is Severity.WARNING
        ]
        if warnings:
            payload["warnings"] = warnings
        return payload

    @app.get("/stats")
    def get_stats():
        return compute_stats(store.snapshot()).as_dict()

    @app.get("/validate")
    def get_validation():
        return validate(store.snapshot(), store.schema).as_dict()

    @app.get("/translit")
    def get_translit(text: str, direction: str = "to-bw"):
        if direction == "to-bw":
            result = to_buckwalter(text)
        elif direction == "from-bw":
            result = from_buckwalter(text)
        else:
            raise HTTPException(
                422, "direction must be 'to-bw' or 'from-bw'"
            )
        return {
            "text": result.text,
            "out_of_alphabet": result.out_of_alphabet,
            "unmapped": list(result.unmapped),
        }

    return app
