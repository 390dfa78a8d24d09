"""Serialization round-trips and transcript import.

A corpus serializes to a canonical JSON document (stable bytes, Arabic
kept readable). Transcripts come in as dialogues whose turns carry the
UNANNOTATED placeholder until a human assigns real acts.
"""

import tempfile
from pathlib import Path

from dialact import (
    Modality,
    import_transcript,
    load_corpus_dir,
    parse,
    save_corpus_dir,
    serialize,
    validate,
)
from dialact.sample import sample_corpus

corpus = sample_corpus()
blob = serialize(corpus)
print(f"serialized {len(corpus.dialogues)} dialogue(s)"
      f" to {len(blob)} canonical bytes")
assert parse(blob) == corpus
assert serialize(parse(blob)) == blob
print("parse(serialize(corpus)) == corpus")

with tempfile.TemporaryDirectory() as tmp:
    target = Path(tmp) / "corpus"
    save_corpus_dir(corpus, target)
    print(f"\ncorpus directory layout: "
          f"{sorted(p.name for p in target.iterdir())}")
    assert load_corpus_dir(target) == corpus

transcript = (
    "Operator\tمساء الخير بنك مصر احمد مع حضرتك\n"
    "Customer\tعايز اعرف مواعيد الفرع\n"
    "Operator\tشكرا لاتصالك مع السلامة\n"
)
imported = import_transcript(transcript.encode(), Modality.SPOKEN, source="bank")
dialogue = imported.dialogues[0]
print(f"\nimported {len(dialogue.turns)} turns from a plain transcript:")
for turn in dialogue.turns:
    print(f"  {turn.uid} {turn.speaker.value:<8} {turn.overall_act:<12}"
          f" {turn.text}")

report = validate(imported)
print(f"\npending annotation: {len(report.errors)} R1 error(s) until"
      " every turn gets a real act")
