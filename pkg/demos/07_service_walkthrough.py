"""The annotation service, end to end, in one process.

Imports a transcript, serves it, annotates the opening turn over HTTP
(the same flow the browser UI drives), and shows the corpus directory
updating underneath.
"""

import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from dialact import Modality, import_transcript, load_corpus_dir, save_corpus_dir
from dialact.service import create_app

transcript = (
    "Operator\tمساء الخير بنك مصر احمد مع حضرتك\n"
    "Customer\tعايز اعرف الرصيد\n"
)

with tempfile.TemporaryDirectory() as tmp:
    corpus_dir = Path(tmp) / "corpus"
    save_corpus_dir(
        import_transcript(transcript.encode(), Modality.SPOKEN, source="bank"),
        corpus_dir,
    )

    with TestClient(create_app(corpus_dir)) as client:
        print("dialogues:", client.get("/dialogues").json())

        turn = client.get("/dialogues/1/turns/D01U01").json()
        print(f"\nbefore: Over_ALL_DA={turn['Over_ALL_DA']}"
              f" revision={turn['revision']}")

        update = {
            "overall_act": "Opening",
            "is_segmented": True,
            "segments": [
                {"text": "مساء الخير", "act": "Greeting"},
                {"text": "بنك مصر", "act": "Self-Introduce"},
                {"text": "احمد مع حضرتك", "act": "Self-Introduce"},
            ],
            "revision": turn["revision"],
        }
        response = client.put("/dialogues/1/turns/D01U01", json=update)
        print(f"PUT -> {response.status_code}")
        for segment in response.json()["segments"]:
            print(f"  SegID {segment['SegID']}: {segment['Segment']!r}"
                  f" -> {segment['SDA']}")

        # a stale revision is refused
        stale = client.put("/dialogues/1/turns/D01U01", json=update)
        print(f"replayed PUT with the old revision -> {stale.status_code}")

        # a bad act never reaches disk
        bad = dict(update, revision=response.json()["revision"])
        bad["segments"] = [{"text": turn["Utterance"], "act": "Nope"}]
        refused = client.put("/dialogues/1/turns/D01U01", json=bad)
        print(f"PUT with unknown act -> {refused.status_code}:"
              f" {refused.json()['findings'][0]['message']}")

        print("\nremaining findings:",
              client.get("/validate").json()["num_errors"], "error(s)")

    on_disk = load_corpus_dir(corpus_dir)
    print("first turn on disk is now:",
          on_disk.dialogues[0].turns[0].overall_act)
