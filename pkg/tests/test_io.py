import json
import random
from dataclasses import replace

import pytest

from dialact import io as corpus_io
from dialact.model import (
    UNANNOTATED,
    Corpus,
    Modality,
    SpeakerRole,
    validate,
)

from synth import pristine_corpus
from test_model import one_turn_corpus, opening_turn


FIGURE_DOC = {
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
                    "Utterance": "مساء الخير الاخي فون احمد معك",
                    "Over_ALL_DA": "Opening",
                    "isSegmented": True,
                    "segments": [
                        {"SegID": 35295, "Segment": "مساء الخير", "SDA": "Greeting"},
                        {"SegID": 35296, "Segment": "الاخي فون", "SDA": "SelfIntroduce"},
                        {"SegID": 35297, "Segment": "احمد معك", "SDA": "SelfIntroduce"},
                    ],
                }
            ],
        }
    ],
}


def doc_bytes(doc):
    return json.dumps(doc, ensure_ascii=False).encode("utf-8")


# ---------------------------------------------------------------------------
# serialize


def test_serialize_empty_corpus():
    data = corpus_io.serialize(Corpus())
    doc = json.loads(data)
    assert doc["format_version"] == "1.0"
    assert doc["dialogues"] == []


def test_serialize_is_deterministic():
    corpus = pristine_corpus(random.Random(3))
    assert corpus_io.serialize(corpus) == corpus_io.serialize(corpus)


def test_serialize_never_escapes_arabic():
    data = corpus_io.serialize(one_turn_corpus(opening_turn()))
    assert "مساء".encode("utf-8") in data
    assert b"\\u0645" not in data


def test_serialize_refuses_invalid_corpus():
    turn = replace(opening_turn(segmented=False), overall_act="Bogus")
    with pytest.raises(corpus_io.InvalidCorpusError):
        corpus_io.serialize(one_turn_corpus(turn))


def test_serialize_unannotated_requires_optout():
    turn = replace(opening_turn(segmented=False), overall_act=UNANNOTATED)
    corpus = one_turn_corpus(turn)
    with pytest.raises(corpus_io.InvalidCorpusError):
        corpus_io.serialize(corpus)
    data = corpus_io.serialize(corpus, require_valid=False)
    assert UNANNOTATED.encode() in data


def test_warnings_do_not_block_serialization():
    corpus = one_turn_corpus(opening_turn())  # R8 warning only
    assert validate(corpus).warnings
    corpus_io.serialize(corpus)


# ---------------------------------------------------------------------------
# parse


def test_parse_figure_record():
    corpus = corpus_io.parse(doc_bytes(FIGURE_DOC))
    assert len(corpus.dialogues) == 1
    dialogue = corpus.dialogues[0]
    assert dialogue.did == 1
    assert dialogue.modality is Modality.SPOKEN
    turn = dialogue.turns[0]
    assert turn.uid == "D01U01"
    assert turn.speaker is SpeakerRole.OPERATOR
    assert turn.overall_act == "Opening"
    assert turn.is_segmented
    assert [s.seg_id for s in turn.segments] == [35295, 35296, 35297]
    # acts are canonicalized on input
    assert [s.act for s in turn.segments] == [
        "Greeting",
        "Self-Introduce",
        "Self-Introduce",
    ]
    assert validate(corpus).has_errors is False


def test_parse_missing_field_names_path():
    doc = json.loads(json.dumps(FIGURE_DOC))
    del doc["dialogues"][0]["turns"][0]["Over_ALL_DA"]
    with pytest.raises(corpus_io.ParseError) as excinfo:
        corpus_io.parse(doc_bytes(doc))
    assert "/dialogues/0/turns/0/Over_ALL_DA" in str(excinfo.value)


def test_parse_unknown_act_rejected():
    doc = json.loads(json.dumps(FIGURE_DOC))
    doc["dialogues"][0]["turns"][0]["segments"][0]["SDA"] = "Greetingg"
    with pytest.raises(corpus_io.ParseError) as excinfo:
        corpus_io.parse(doc_bytes(doc))
    assert "unknown act" in str(excinfo.value)
    assert "Greetingg" in str(excinfo.value)


def test_parse_accepts_reserved_placeholder():
    doc = json.loads(json.dumps(FIGURE_DOC))
    turn = doc["dialogues"][0]["turns"][0]
    turn["Over_ALL_DA"] = UNANNOTATED
    turn["isSegmented"] = False
    turn["segments"] = []
    corpus = corpus_io.parse(doc_bytes(doc))
    assert corpus.dialogues[0].turns[0].overall_act == UNANNOTATED
    assert validate(corpus).has_errors  # still fails R1, by design


def test_parse_version_mismatch():
    doc = json.loads(json.dumps(FIGURE_DOC))
    doc["format_version"] = "2.0"
    with pytest.raises(corpus_io.ParseError) as excinfo:
        corpus_io.parse(doc_bytes(doc))
    assert "/format_version" in str(excinfo.value)


def test_parse_unknown_schema_name():
    doc = json.loads(json.dumps(FIGURE_DOC))
    doc["schema_name"] = "swda"
    with pytest.raises(corpus_io.ParseError):
        corpus_io.parse(doc_bytes(doc))


def test_parse_malformed_json():
    with pytest.raises(corpus_io.ParseError) as excinfo:
        corpus_io.parse(b"{nope")
    assert "malformed JSON" in str(excinfo.value)


def test_strict_rejects_unknown_fields_lenient_ignores():
    doc = json.loads(json.dumps(FIGURE_DOC))
    doc["dialogues"][0]["turns"][0]["color"] = "green"
    with pytest.raises(corpus_io.ParseError) as excinfo:
        corpus_io.parse(doc_bytes(doc))
    assert "/dialogues/0/turns/0/color" in str(excinfo.value)
    lenient = corpus_io.parse(doc_bytes(doc), strict=False)
    assert lenient == corpus_io.parse(doc_bytes(FIGURE_DOC))


def test_parse_bad_types():
    for mutate, fragment in [
        (lambda d: d["dialogues"][0].update(DID="one"), "/dialogues/0/DID"),
        (
            lambda d: d["dialogues"][0]["turns"][0].update(isSegmented="yes"),
            "isSegmented",
        ),
        (
            lambda d: d["dialogues"][0]["turns"][0].update(Person="Agent"),
            "Person",
        ),
        (
            lambda d: d["dialogues"][0].update(modality="Email"),
            "modality",
        ),
        (
            lambda d: d["dialogues"][0]["turns"][0].update(Utterance="   "),
            "Utterance",
        ),
    ]:
        doc = json.loads(json.dumps(FIGURE_DOC))
        mutate(doc)
        with pytest.raises(corpus_io.ParseError) as excinfo:
            corpus_io.parse(doc_bytes(doc))
        assert fragment in str(excinfo.value)


def test_parse_tolerates_bom():
    data = b"\xef\xbb\xbf" + doc_bytes(FIGURE_DOC)
    assert corpus_io.parse(data) == corpus_io.parse(doc_bytes(FIGURE_DOC))


def test_roundtrip_worked_example():
    corpus = one_turn_corpus(opening_turn())
    assert corpus_io.parse(corpus_io.serialize(corpus)) == corpus


def test_roundtrip_random_corpora():
    for seed in range(60):
        corpus = pristine_corpus(random.Random(seed))
        data = corpus_io.serialize(corpus)
        again = corpus_io.parse(data)
        assert again == corpus
        assert corpus_io.serialize(again) == data


def test_strict_rejects_exactly_what_lenient_modifies():
    """On clean documents the modes agree; junk fields split them."""
    rng = random.Random(17)
    spots = ["top", "dialogue", "turn", "segment"]
    for seed in range(20):
        corpus = pristine_corpus(random.Random(seed))
        data = corpus_io.serialize(corpus)
        assert corpus_io.parse(data, strict=False) == corpus_io.parse(data)

        doc = json.loads(data)
        spot = spots[seed % len(spots)]
        if spot == "top":
            doc["extra"] = 1
        elif spot == "dialogue":
            doc["dialogues"][0]["extra"] = 1
        else:
            dialogue = rng.choice(doc["dialogues"])
            turn = rng.choice(dialogue["turns"])
            if spot == "segment" and turn["segments"]:
                turn["segments"][0]["extra"] = 1
            else:
                turn["extra"] = 1
        dirty = doc_bytes(doc)
        with pytest.raises(corpus_io.ParseError):
            corpus_io.parse(dirty)
        assert corpus_io.parse(dirty, strict=False) == corpus


# ---------------------------------------------------------------------------
# corpus directories


def test_save_and_load_corpus_dir(tmp_path):
    corpus = pristine_corpus(random.Random(5), n_dialogues=3)
    corpus_io.save_corpus_dir(corpus, tmp_path)
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["D1.json", "D2.json", "D3.json"]
    assert corpus_io.load_corpus_dir(tmp_path) == corpus


def test_load_corpus_dir_sorts_by_did(tmp_path):
    corpus = pristine_corpus(random.Random(8), n_dialogues=3)
    shuffled = Corpus(dialogues=tuple(reversed(corpus.dialogues)))
    corpus_io.save_corpus_dir(shuffled, tmp_path)
    assert [d.did for d in corpus_io.load_corpus_dir(tmp_path).dialogues] == [1, 2, 3]


def test_load_corpus_dir_ignores_other_files(tmp_path):
    corpus = pristine_corpus(random.Random(5), n_dialogues=1)
    corpus_io.save_corpus_dir(corpus, tmp_path)
    (tmp_path / "segid_counter.json").write_text('{"next_seg_id": 9}')
    (tmp_path / "notes.txt").write_text("scratch")
    assert corpus_io.load_corpus_dir(tmp_path) == corpus


def test_load_corpus_dir_checks_filename_did(tmp_path):
    corpus = pristine_corpus(random.Random(5), n_dialogues=1)
    corpus_io.save_corpus_dir(corpus, tmp_path)
    (tmp_path / "D1.json").rename(tmp_path / "D7.json")
    with pytest.raises(corpus_io.ParseError):
        corpus_io.load_corpus_dir(tmp_path)


def test_load_missing_dir():
    with pytest.raises(FileNotFoundError):
        corpus_io.load_corpus_dir("/nonexistent/corpus")


def test_empty_dir_is_empty_corpus(tmp_path):
    assert corpus_io.load_corpus_dir(tmp_path) == Corpus()


# ---------------------------------------------------------------------------
# transcript import

TRS_SAMPLE = """<?xml version="1.0" encoding="UTF-8"?>
<Trans scribe="x" audio_filename="call01">
<Speakers>
<Speaker id="spk1" name="Operator"/>
<Speaker id="spk2" name="Customer"/>
</Speakers>
<Episode>
<Section type="report" startTime="0" endTime="42">
<Turn speaker="spk1" startTime="0" endTime="6">
<Sync time="0"/>
مساء الخير بنك مصر احمد مع حضرتك
</Turn>
<Turn speaker="spk2" startTime="6" endTime="12">
<Sync time="6"/>
عايز افتح حساب
</Turn>
<Turn speaker="spk1" startTime="12" endTime="13">
<Sync time="12"/>
</Turn>
</Section>
</Episode>
</Trans>
"""

TXT_SAMPLE = "Operator\tمساء الخير بنك مصر احمد مع حضرتك\nCustomer\tعايز افتح حساب\n"


def test_import_plain_transcript():
    corpus = corpus_io.import_transcript(TXT_SAMPLE.encode(), Modality.CHAT)
    dialogue = corpus.dialogues[0]
    assert len(dialogue.turns) == 2
    assert dialogue.turns[0].speaker is SpeakerRole.OPERATOR
    assert dialogue.turns[1].speaker is SpeakerRole.CUSTOMER
    assert all(t.overall_act == UNANNOTATED for t in dialogue.turns)
    assert dialogue.turns[0].uid == "D01U01"


def test_import_xml_transcript():
    corpus = corpus_io.import_transcript(TRS_SAMPLE.encode(), Modality.SPOKEN)
    dialogue = corpus.dialogues[0]
    # the whitespace-only third turn is dropped; numbering stays dense
    assert [t.uid for t in dialogue.turns] == ["D01U01", "D01U02"]
    assert dialogue.turns[0].text == "مساء الخير بنك مصر احمد مع حضرتك"
    assert dialogue.turns[0].speaker is SpeakerRole.OPERATOR


def test_import_autodetects_format():
    xml = corpus_io.import_transcript(TRS_SAMPLE.encode(), Modality.SPOKEN)
    txt = corpus_io.import_transcript(TXT_SAMPLE.encode(), Modality.SPOKEN)
    assert len(xml.dialogues[0].turns) == len(txt.dialogues[0].turns) == 2


def test_import_unknown_speaker_code():
    bad = "Agent\tمساء الخير\n"
    with pytest.raises(corpus_io.ParseError) as excinfo:
        corpus_io.import_transcript(bad.encode(), Modality.CHAT)
    assert "unknown speaker code" in str(excinfo.value)


def test_import_xml_unknown_speaker():
    data = TRS_SAMPLE.replace('name="Operator"', 'name="Agent"')
    with pytest.raises(corpus_io.ParseError):
        corpus_io.import_transcript(data.encode(), Modality.SPOKEN)


def test_import_missing_tab():
    with pytest.raises(corpus_io.ParseError) as excinfo:
        corpus_io.import_transcript(b"Operator no tab here", Modality.CHAT)
    assert "SPEAKER<TAB>text" in str(excinfo.value)


def test_import_empty_transcript():
    with pytest.raises(corpus_io.ParseError):
        corpus_io.import_transcript(b"\n\n", Modality.CHAT)


def test_import_did_and_source():
    corpus = corpus_io.import_transcript(
        TXT_SAMPLE.encode(), Modality.CHAT, did=4, source="mobile agency"
    )
    dialogue = corpus.dialogues[0]
    assert dialogue.did == 4
    assert dialogue.source == "mobile agency"
    assert dialogue.turns[0].uid == "D04U01"


def test_import_then_annotate_then_roundtrip():
    corpus = corpus_io.import_transcript(TXT_SAMPLE.encode(), Modality.SPOKEN)
    dialogue = corpus.dialogues[0]
    from dialact.model import segment_turn

    first = segment_turn(
        replace(dialogue.turns[0], overall_act="Opening"),
        [2, 4],
        ["Greeting", "Self-Introduce", "Self-Introduce"],
        seg_ids=iter([1, 2, 3]),
    )
    second = replace(dialogue.turns[1], overall_act="Closing")
    annotated = Corpus(
        dialogues=(replace(dialogue, turns=(first, second)),)
    )
    again = corpus_io.parse(corpus_io.serialize(annotated))
    assert not validate(again).has_errors
    assert again == annotated


# ---------------------------------------------------------------------------
# schema export


def test_schema_jsonable_shape():
    entries = corpus_io.schema_to_jsonable()
    assert len(entries) == 25
    assert entries[0] == {
        "name": "Taking-Request",
        "dimension": "Request",
        "definition": "Dealing with taking request e.g. hello",
        "subfunctions": [],
    }
    agree = next(e for e in entries if e["name"] == "Agree")
    assert agree["subfunctions"] == [
        "accept-confirmation",
        "yes-answer",
        "accept-thanking",
        "accept-apology",
    ]
