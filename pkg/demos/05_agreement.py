"""Inter-annotator agreement between two annotations of one corpus.

Two annotators label the same utterance units; units are aligned by turn
identifier and segment position, then scored with Cohen's kappa
(chance-corrected, exact rational arithmetic).
"""

from dataclasses import replace

from dialact import cohen_kappa
from dialact.sample import sample_corpus
from dialact.stats import aligned_label_pairs, extract_unit_labels

annotator_a = sample_corpus()

# annotator B disagrees on two units of the chat dialogue
dialogue = annotator_a.dialogues[1]
turns = list(dialogue.turns)
turns[1] = replace(turns[1], overall_act="Service-Question")
turns[2] = replace(turns[2], overall_act="Inform")
annotator_b = replace(
    annotator_a, dialogues=(annotator_a.dialogues[0], replace(dialogue, turns=tuple(turns)))
)

labels_a, labels_b = aligned_label_pairs(
    extract_unit_labels(annotator_a), extract_unit_labels(annotator_b)
)
report = cohen_kappa(labels_a, labels_b)

print(f"aligned units       {report.n_items}")
print(f"observed agreement  {float(report.observed_agreement):.4f}")
print(f"expected agreement  {float(report.expected_agreement):.4f}")
print(f"kappa               {float(report.kappa):.4f}")
print(f"(exact kappa        {report.kappa})")

print("\ndisagreement cells:")
for (act_a, act_b), count in sorted(report.confusion.items()):
    if act_a != act_b:
        print(f"  A={act_a:<16} B={act_b:<16} x{count}")
