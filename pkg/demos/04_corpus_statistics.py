"""Corpus statistics over the bundled sample corpus.

Counts, word-per-unit averages and the utterance act histogram. The
averages are exact rationals internally; the one-decimal figures are a
display convention.
"""

from dialact import compute_stats
from dialact.sample import sample_corpus

corpus = sample_corpus()
stats = compute_stats(corpus)
payload = stats.as_dict()

print(f"dialogues            {stats.num_dialogues}"
      f" (spoken {stats.num_spoken}, chat {stats.num_chat})")
print(f"turns                {stats.num_turns}")
print(f"utterances           {stats.num_utterances}")
print(f"avg words/turn       {payload['avg_words_per_turn_display']}"
      f"  (exactly {stats.avg_words_per_turn})")
print(f"avg words/utterance  {payload['avg_words_per_utterance_display']}"
      f"  (exactly {stats.avg_words_per_utterance})")

print("\nact histogram:")
for act, count in sorted(stats.act_histogram.items(), key=lambda kv: -kv[1]):
    print(f"  {act:<16} {count}")
