"""Buckwalter transliteration in both directions.

One Arabic sign maps to one printable ASCII character, so the mapping is
reversible and length-preserving. Characters outside the alphabet pass
through and are flagged rather than raising.
"""

from dialact import from_buckwalter, to_buckwalter

samples = [
    "مساء الخير",
    "بنك مصر",
    "احمد مع حضرتك",
]

for arabic in samples:
    result = to_buckwalter(arabic)
    back = from_buckwalter(result.text)
    print(f"{arabic}  ->  {result.text}  ->  {back.text}")
    assert back.text == arabic

print()

# mixed chat-style input: ASCII letters are Buckwalter codes and map to
# Arabic signs, while digits have no table entry and get flagged
mixed = from_buckwalter("mrHbA 123")
print(f"text: {mixed.text}")
print(f"out of alphabet: {mixed.out_of_alphabet}, unmapped: {mixed.unmapped}")

# diacritics are covered too
vocalized = to_buckwalter("كَتَبَ")
print(f"كَتَبَ -> {vocalized.text}")
assert from_buckwalter(vocalized.text).text == "كَتَبَ"
