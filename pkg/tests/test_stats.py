import random
import re
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dialact.model import Corpus, Dialogue, Modality, SpeakerRole, Turn, make_uid
from dialact.stats import (
    aligned_label_pairs,
    cohen_kappa,
    compute_stats,
    extract_unit_labels,
    format_1dp,
    word_count,
)

from synth import ALL_ACTS, pristine_corpus
from test_model import one_turn_corpus, opening_turn


# ---------------------------------------------------------------------------
# word counting


def test_word_count_examples():
    assert word_count("مساء الخير") == 2
    assert word_count("") == 0
    assert word_count("مساء الخير بنك مصر احمد مع حضرتك") == 7


def test_word_count_ignores_whitespace_runs():
    assert word_count("  كلمة \t كلمة\nكلمة  ") == 3


# ---------------------------------------------------------------------------
# display rounding


def test_format_1dp_half_away_from_zero():
    assert format_1dp(Fraction(67, 10)) == "6.7"
    assert format_1dp(Fraction(20107, 3001)) == "6.7"
    assert format_1dp(Fraction(20107, 4727)) == "4.3"
    assert format_1dp(Fraction(13, 4)) == "3.3"     # 3.25 rounds away
    assert format_1dp(Fraction(-13, 4)) == "-3.3"
    assert format_1dp(Fraction(0)) == "0.0"
    assert format_1dp(Fraction(1, 100)) == "0.0"


# ---------------------------------------------------------------------------
# corpus statistics


def naive_stats(corpus):
    """Independent recount used as the oracle (regex word definition)."""
    words = lambda s: len(re.findall(r"\S+", s))
    n_dialogues = n_spoken = n_turns = n_utts = t_words = u_words = 0
    histogram = {}
    for dialogue in corpus.dialogues:
        n_dialogues += 1
        if dialogue.modality is Modality.SPOKEN:
            n_spoken += 1
        for turn in dialogue.turns:
            n_turns += 1
            t_words += words(turn.text)
            units = (
                [(s.text, s.act) for s in turn.segments]
                if turn.segments
                else [(turn.text, turn.overall_act)]
            )
            for text, act in units:
                n_utts += 1
                u_words += words(text)
                histogram[act] = histogram.get(act, 0) + 1
    return {
        "num_dialogues": n_dialogues,
        "num_spoken": n_spoken,
        "num_chat": n_dialogues - n_spoken,
        "num_turns": n_turns,
        "num_utterances": n_utts,
        "avg_words_per_turn": Fraction(t_words, n_turns) if n_turns else Fraction(0),
        "avg_words_per_utterance": (
            Fraction(u_words, n_utts) if n_utts else Fraction(0)
        ),
        "act_histogram": histogram,
    }


def assert_matches_naive(corpus):
    stats = compute_stats(corpus)
    expected = naive_stats(corpus)
    for key, value in expected.items():
        assert getattr(stats, key) == value, key


def test_empty_corpus():
    stats = compute_stats(Corpus())
    assert stats.num_dialogues == stats.num_turns == stats.num_utterances == 0
    assert stats.avg_words_per_turn == 0
    assert stats.avg_words_per_utterance == 0
    assert stats.act_histogram == {}


def test_single_unsegmented_turn():
    turn = Turn(
        uid=make_uid(1, 1),
        speaker=SpeakerRole.OPERATOR,
        text="مساء الخير",
        overall_act="Greeting",
    )
    stats = compute_stats(one_turn_corpus(turn))
    assert stats.num_turns == 1
    assert stats.num_utterances == 1
    assert stats.avg_words_per_turn == 2
    assert stats.act_histogram == {"Greeting": 1}


def test_worked_example_histogram():
    stats = compute_stats(one_turn_corpus(opening_turn()))
    assert stats.num_utterances == 3
    assert stats.act_histogram == {"Greeting": 1, "Self-Introduce": 2}
    # the overall act of a segmented turn does not label a unit
    assert "Opening" not in stats.act_histogram


def test_invariants_on_random_corpora():
    for seed in range(25):
        corpus = pristine_corpus(random.Random(seed))
        stats = compute_stats(corpus)
        assert stats.num_spoken + stats.num_chat == stats.num_dialogues
        assert stats.num_utterances >= stats.num_turns
        assert sum(stats.act_histogram.values()) == stats.num_utterances


def test_matches_naive_recount_small_corpora():
    for seed in range(40):
        rng = random.Random(seed)
        corpus = pristine_corpus(rng, n_dialogues=1)
        if len(corpus.dialogues[0].turns) > 5:
            corpus = Corpus(
                dialogues=(
                    Dialogue(
                        did=1,
                        modality=corpus.dialogues[0].modality,
                        source=corpus.dialogues[0].source,
                        turns=corpus.dialogues[0].turns[:5],
                    ),
                )
            )
        assert_matches_naive(corpus)


def test_reorder_invariance():
    rng = random.Random(11)
    corpus = pristine_corpus(rng, n_dialogues=3)
    shuffled = Corpus(dialogues=tuple(reversed(corpus.dialogues)))
    assert compute_stats(corpus) == compute_stats(shuffled)


# ---------------------------------------------------------------------------
# agreement


def kappa_brute(a, b):
    """Confusion-matrix route, independent of the marginals route."""
    n = len(a)
    labels = sorted(set(a) | set(b))
    matrix = {(x, y): 0 for x in labels for y in labels}
    for x, y in zip(a, b):
        matrix[(x, y)] += 1
    observed = Fraction(sum(matrix[(x, x)] for x in labels), n)
    expected = Fraction(
        sum(
            sum(matrix[(x, y)] for y in labels)
            * sum(matrix[(y, x)] for y in labels)
            for x in labels
        ),
        n * n,
    )
    if observed == 1:
        return Fraction(1), observed, expected
    return (observed - expected) / (1 - expected), observed, expected


def test_kappa_perfect_agreement():
    labels = ["Agree", "Disagree", "Inform", "Agree"]
    report = cohen_kappa(labels, labels)
    assert report.kappa == 1
    assert report.observed_agreement == 1


def test_kappa_identical_degenerate_labels():
    report = cohen_kappa(["Agree"] * 5, ["Agree"] * 5)
    assert report.kappa == 1
    assert report.expected_agreement == 1


def test_kappa_hand_case():
    # marginals (0.6, 0.4) and (0.5, 0.5), observed 0.7 -> kappa 0.4
    a = ["Agree"] * 60 + ["Disagree"] * 40
    b = (
        ["Agree"] * 40
        + ["Disagree"] * 20
        + ["Agree"] * 10
        + ["Disagree"] * 30
    )
    report = cohen_kappa(a, b)
    assert report.observed_agreement == Fraction(7, 10)
    assert report.expected_agreement == Fraction(1, 2)
    assert report.kappa == Fraction(2, 5)


def test_kappa_errors():
    with pytest.raises(ValueError):
        cohen_kappa(["Agree"], ["Agree", "Agree"])
    with pytest.raises(ValueError):
        cohen_kappa([], [])


def test_kappa_matches_brute_force():
    rng = random.Random(99)
    for _ in range(300):
        n = rng.randint(1, 50)
        acts = rng.sample(ALL_ACTS, rng.randint(1, 6))
        a = [rng.choice(acts) for _ in range(n)]
        b = [rng.choice(acts) for _ in range(n)]
        report = cohen_kappa(a, b)
        kappa, observed, expected = kappa_brute(a, b)
        assert report.kappa == kappa
        assert report.observed_agreement == observed
        assert report.expected_agreement == expected


def test_kappa_confusion_counts():
    report = cohen_kappa(["a", "a", "b"], ["a", "b", "b"])
    assert report.confusion == {("a", "a"): 1, ("a", "b"): 1, ("b", "b"): 1}
    assert report.n_items == 3


@given(
    st.lists(
        st.sampled_from(["Agree", "Disagree", "Inform"]), min_size=1, max_size=30
    ),
    st.randoms(use_true_random=False),
)
def test_kappa_symmetric(a, rng):
    b = [rng.choice(["Agree", "Disagree", "Inform"]) for _ in a]
    ab = cohen_kappa(a, b)
    ba = cohen_kappa(b, a)
    assert ab.kappa == ba.kappa
    assert ab.observed_agreement == ba.observed_agreement
    assert ab.expected_agreement == ba.expected_agreement


@given(
    st.lists(st.sampled_from(["x", "y", "z"]), min_size=1, max_size=30),
    st.permutations(["x", "y", "z"]),
    st.randoms(use_true_random=False),
)
def test_kappa_relabeling_invariant(a, perm, rng):
    b = [rng.choice(["x", "y", "z"]) for _ in a]
    mapping = dict(zip(["x", "y", "z"], perm))
    relabeled = cohen_kappa([mapping[v] for v in a], [mapping[v] for v in b])
    assert relabeled.kappa == cohen_kappa(a, b).kappa


# ---------------------------------------------------------------------------
# unit extraction and alignment


def test_extract_unit_labels():
    corpus = one_turn_corpus(opening_turn())
    units = extract_unit_labels(corpus)
    assert units == {
        ("D01U01", 1): "Greeting",
        ("D01U01", 2): "Self-Introduce",
        ("D01U01", 3): "Self-Introduce",
    }


def test_extract_unsegmented_turn_is_one_unit():
    units = extract_unit_labels(one_turn_corpus(opening_turn(segmented=False)))
    assert units == {("D01U01", 0): "Opening"}


def test_alignment_ignores_unshared_units():
    a = {("D01U01", 0): "Agree", ("D01U02", 0): "Inform"}
    b = {("D01U01", 0): "Disagree", ("D01U03", 0): "Inform"}
    labels_a, labels_b = aligned_label_pairs(a, b)
    assert labels_a == ["Agree"]
    assert labels_b == ["Disagree"]
