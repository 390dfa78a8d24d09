"""Corpus statistics and inter-annotator agreement.

Words are maximal runs of non-whitespace characters; no punctuation
splitting, no clitic segmentation. An unsegmented turn counts as one
utterance, a segmented turn as one utterance per segment. Averages are
kept as exact rationals and rounded (half away from zero, one decimal)
only for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .model import Corpus, parse_uid

__all__ = [
    "AgreementReport",
    "CorpusStats",
    "aligned_label_pairs",
    "cohen_kappa",
    "compute_stats",
    "extract_unit_labels",
    "format_1dp",
    "word_count",
]


def word_count(text: str) -> int:
    """Number of whitespace-separated tokens."""
    return len(text.split())


def format_1dp(value: Fraction) -> str:
    """Render a rational to one decimal, rounding half away from zero."""
    tenths = int(abs(value) * 10 + Fraction(1, 2))
    body = f"{tenths // 10}.{tenths % 10}"
    return f"-{body}" if value < 0 and tenths > 0 else body


@dataclass(frozen=True)
class CorpusStats:
    num_dialogues: int
    num_spoken: int
    num_chat: int
    num_turns: int
    num_utterances: int
    avg_words_per_turn: Fraction
    avg_words_per_utterance: Fraction
    act_histogram: dict[str, int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "num_dialogues": self.num_dialogues,
            "num_spoken": self.num_spoken,
            "num_chat": self.num_chat,
            "num_turns": self.num_turns,
            "num_utterances": self.num_utterances,
            "avg_words_per_turn": float(self.avg_words_per_turn),
            "avg_words_per_turn_display": format_1dp(self.avg_words_per_turn),
            "avg_words_per_utterance": float(self.avg_words_per_utterance),
            "avg_words_per_utterance_display": format_1dp(
                self.avg_words_per_utterance
            ),
            "act_histogram": dict(sorted(self.act_histogram.items())),
        }


def compute_stats(corpus: Corpus) -> CorpusStats:
    """Aggregate counts, averages and the utterance act histogram.

    The histogram counts labeled utterance units: the overall act of an
    unsegmented turn, the segment acts of a segmented one. An empty
    corpus yields zero counts and zero averages.
    """
    num_dialogues = len(corpus.dialogues)
    num_spoken = sum(
        1 for d in corpus.dialogues if d.modality.value == "Spoken"
    )
    num_turns = 0
    num_utterances = 0
    turn_words = 0
    utterance_words = 0
    histogram: dict[str, int] = {}
    for dialogue in corpus.dialogues:
        for turn in dialogue.turns:
            num_turns += 1
            turn_words += word_count(turn.text)
            if turn.segments:
                for segment in turn.segments:
                    num_utterances += 1
                    utterance_words += word_count(segment.text)
                    histogram[segment.act] = histogram.get(segment.act, 0) + 1
            else:
                num_utterances += 1
                utterance_words += word_count(turn.text)
                histogram[turn.overall_act] = (
                    histogram.get(turn.overall_act, 0) + 1
                )
    return CorpusStats(
        num_dialogues=num_dialogues,
        num_spoken=num_spoken,
        num_chat=num_dialogues - num_spoken,
        num_turns=num_turns,
        num_utterances=num_utterances,
        avg_words_per_turn=(
            Fraction(turn_words, num_turns) if num_turns else Fraction(0)
        ),
        avg_words_per_utterance=(
            Fraction(utterance_words, num_utterances)
            if num_utterances
            else Fraction(0)
        ),
        act_histogram=histogram,
    )


@dataclass(frozen=True)
class AgreementReport:
    kappa: Fraction
    observed_agreement: Fraction
    expected_agreement: Fraction
    n_items: int
    confusion: dict[tuple[str, str], int] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "kappa": float(self.kappa),
            "observed_agreement": float(self.observed_agreement),
            "expected_agreement": float(self.expected_agreement),
            "n_items": self.n_items,
            "confusion": [
                {"a": a, "b": b, "count": n}
                for (a, b), n in sorted(self.confusion.items())
            ],
        }


def cohen_kappa(
    a: Sequence[str], b: Sequence[str]
) -> AgreementReport:
    """Chance-corrected agreement between two aligned label sequences.

    observed is the fraction of positions with equal labels; expected is
    the product-of-marginals chance agreement; kappa is
    (observed - expected) / (1 - expected), exactly 1 when observed is 1.
    All arithmetic is exact.
    """
    if len(a) != len(b):
        raise ValueError(
            f"label sequences differ in length: {len(a)} vs {len(b)}"
        )
    n = len(a)
    if n == 0:
        raise ValueError("label sequences are empty")
    confusion: dict[tuple[str, str], int] = {}
    marginal_a: dict[str, int] = {}
    marginal_b: dict[str, int] = {}
    matches = 0
    for la, lb in zip(a, b):
        confusion[(la, lb)] = confusion.get((la, lb), 0) + 1
        marginal_a[la] = marginal_a.get(la, 0) + 1
        marginal_b[lb] = marginal_b.get(lb, 0) + 1
        if la == lb:
            matches += 1
    observed = Fraction(matches, n)
    expected = Fraction(
        sum(
            count_a * marginal_b.get(label, 0)
            for label, count_a in marginal_a.items()
        ),
        n * n,
    )
    if observed == 1:
        kappa = Fraction(1)
    else:
        kappa = (observed - expected) / (1 - expected)
    return AgreementReport(
        kappa=kappa,
        observed_agreement=observed,
        expected_agreement=expected,
        n_items=n,
        confusion=confusion,
    )


def extract_unit_labels(corpus: Corpus) -> dict[tuple[str, int], str]:
    """Map each labeled utterance unit to its act.

    Keys are (uid, ordinal): ordinal 0 is the whole unsegmented turn,
    ordinals 1..n are segment positions. Two annotations of the same
    base corpus can be joined on these keys regardless of the segment
    ids their stores assigned.
    """
    units: dict[tuple[str, int], str] = {}
    for dialogue in corpus.dialogues:
        for turn in dialogue.turns:
            if turn.segments:
                for ordinal, segment in enumerate(turn.segments, start=1):
                    units[(turn.uid, ordinal)] = segment.act
            else:
                units[(turn.uid, 0)] = turn.overall_act
    return units


def aligned_label_pairs(
    units_a: Mapping[tuple[str, int], str],
    units_b: Mapping[tuple[str, int], str],
) -> tuple[list[str], list[str]]:
    """Join two unit-label maps on their shared keys, in a fixed order."""

    def sort_key(key: tuple[str, int]):
        uid, ordinal = key
        try:
            did, index = parse_uid(uid)
            return (0, did, index, ordinal, uid)
        except ValueError:
            return (1, 0, 0, ordinal, uid)

    shared = sorted(set(units_a) & set(units_b), key=sort_key)
    return (
        [units_a[k] for k in shared],
        [units_b[k] for k in shared],
    )
