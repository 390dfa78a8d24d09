"""A small deterministic sample corpus.

The real inquiry-answer recordings behind this toolkit are not
distributable, so demos, tests and the service default to this synthetic
stand-in: two fully annotated dialogues (one spoken bank call, one chat
exchange with a mobile agency) built through the regular model
constructors.

``python -m dialact.sample OUTDIR`` writes it as a corpus directory.
"""

from __future__ import annotations

import sys
from itertools import count
from pathlib import Path

from .io import save_corpus_dir
from .model import (
    Corpus,
    Dialogue,
    Modality,
    SpeakerRole,
    Turn,
    make_uid,
    segment_turn,
)

__all__ = ["sample_corpus", "write_sample"]

OPENING_TEXT = "مساء الخير بنك مصر احمد مع حضرتك"


def _turn(did, index, speaker, text, act):
    return Turn(
        uid=make_uid(did, index),
        speaker=speaker,
        text=text,
        overall_act=act,
    )


def sample_corpus() -> Corpus:
    seg_ids = count(1)
    op, cu = SpeakerRole.OPERATOR, SpeakerRole.CUSTOMER

    bank_opening = segment_turn(
        _turn(1, 1, op, OPENING_TEXT, "Opening"),
        boundaries=[2, 4],
        acts=["Greeting", "Self-Introduce", "Self-Introduce"],
        seg_ids=seg_ids,
    )
    bank_inform = segment_turn(
        _turn(1, 5, op, "الحساب الجديد يحتاج صورة البطاقة ويستغرق يومين", "Inform"),
        boundaries=[4],
        acts=["Inform", "Inform"],
        seg_ids=seg_ids,
    )
    bank = Dialogue(
        did=1,
        modality=Modality.SPOKEN,
        source="bank",
        turns=(
            bank_opening,
            _turn(1, 2, cu, "عايز افتح حساب جديد", "Service-Question"),
            _turn(1, 3, op, "ممكن الاسم الكامل", "Other-Question"),
            _turn(1, 4, cu, "اسمي محمد علي", "Other-Answer"),
            bank_inform,
            _turn(1, 6, op, "شكرا لاتصالك مع السلامة", "Closing"),
        ),
    )

    agency = Dialogue(
        did=2,
        modality=Modality.CHAT,
        source="mobile agency",
        turns=(
            _turn(2, 1, op, "اهلا بيك في خدمة العملاء", "Opening"),
            _turn(2, 2, cu, "هل الباقة الجديدة متاحة", "YesNo-Question"),
            _turn(2, 3, op, "ايوه متاحة من اول الشهر", "Agree"),
            _turn(2, 4, op, "شكرا لتواصلك معنا", "Closing"),
        ),
    )

    return Corpus(dialogues=(bank, agency))


def write_sample(directory: Path) -> Path:
    directory = Path(directory)
    save_corpus_dir(sample_corpus(), directory)
    return directory


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print("usage: python -m dialact.sample OUTDIR", file=sys.stderr)
        raise SystemExit(2)
    target = write_sample(Path(sys.argv[1]))
    print(f"sample corpus written to {target}", file=sys.stderr)
