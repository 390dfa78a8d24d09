"""Bidirectional Arabic / Buckwalter transliteration.

The table is the standard Buckwalter mapping: a bijection between Arabic
letters (plus hamza carriers, ta marbuta, alef variants, tatweel) and
printable ASCII, extended with the short-vowel, tanwin, shadda, sukun and
dagger-alef diacritics. The XML-safe duplicate codes (O, W, I) are not
used, which keeps both directions injective.

Characters outside the table are never an error: they pass through
unchanged and are collected on the result so callers can tell whether the
input was fully covered. Chat transcripts routinely mix in digits, Latin
letters and emoji.
"""

from __future__ import annotations

from typing import NamedTuple

__all__ = [
    "ARABIC_TO_BUCKWALTER",
    "BUCKWALTER_TO_ARABIC",
    "TranslitResult",
    "from_buckwalter",
    "to_buckwalter",
]

ARABIC_TO_BUCKWALTER = {
    "ء": "'",   # hamza
    "آ": "|",   # alef with madda
    "أ": ">",   # alef with hamza above
    "ؤ": "&",   # waw with hamza
    "إ": "<",   # alef with hamza below
    "ئ": "}",   # ya with hamza
    "ا": "A",   # alef
    "ب": "b",   # ba
    "ة": "p",   # ta marbuta
    "ت": "t",   # ta
    "ث": "v",   # tha
    "ج": "j",   # jim
    "ح": "H",   # hha
    "خ": "x",   # kha
    "د": "d",   # dal
    "ذ": "*",   # dhal
    "ر": "r",   # ra
    "ز": "z",   # zay
    "س": "s",   # sin
    "ش": "$",   # shin
    "ص": "S",   # sad
    "ض": "D",   # dad
    "ط": "T",   # tah
    "ظ": "Z",   # zah
    "ع": "E",   # ayn
    "غ": "g",   # ghayn
    "ـ": "_",   # tatweel
    "ف": "f",   # fa
    "ق": "q",   # qaf
    "ك": "k",   # kaf
    "ل": "l",   # lam
    "م": "m",   # mim
    "ن": "n",   # nun
    "ه": "h",   # ha
    "و": "w",   # waw
    "ى": "Y",   # alef maqsura
    "ي": "y",   # ya
    "ً": "F",   # fathatan
    "ٌ": "N",   # dammatan
    "ٍ": "K",   # kasratan
    "َ": "a",   # fatha
    "ُ": "u",   # damma
    "ِ": "i",   # kasra
    "ّ": "~",   # shadda
    "ْ": "o",   # sukun
    "ٰ": "`",   # dagger alef
}

BUCKWALTER_TO_ARABIC = {v: k for k, v in ARABIC_TO_BUCKWALTER.items()}


class TranslitResult(NamedTuple):
    """Transliterated text plus the characters that had no table entry."""

    text: str
    unmapped: tuple[str, ...]

    @property
    def out_of_alphabet(self) -> bool:
        return bool(self.unmapped)


def to_buckwalter(arabic: str) -> TranslitResult:
    """Romanize Arabic text.

    Table characters map one-to-one; whitespace and ASCII pass through
    silently; anything else passes through and is flagged.
    """
    out = []
    unmapped: dict[str, None] = {}
    for ch in arabic:
        mapped = ARABIC_TO_BUCKWALTER.get(ch)
        if mapped is not None:
            out.append(mapped)
        elif ch.isspace() or ord(ch) < 128:
            out.append(ch)
        else:
            out.append(ch)
            unmapped[ch] = None
    return TranslitResult("".join(out), tuple(unmapped))


def from_buckwalter(ascii_text: str) -> TranslitResult:
    """Inverse of :func:`to_buckwalter` over the covered alphabet.

    Whitespace passes through silently; characters without a reverse
    entry (digits, unmapped punctuation, anything non-Buckwalter) pass
    through and are flagged.
    """
    out = []
    unmapped: dict[str, None] = {}
    for ch in ascii_text:
        mapped = BUCKWALTER_TO_ARABIC.get(ch)
        if mapped is not None:
            out.append(mapped)
        elif ch.isspace():
            out.append(ch)
        else:
            out.append(ch)
            unmapped[ch] = None
    return TranslitResult("".join(out), tuple(unmapped))
