"""Segmenting an Opening turn and validating the result.

The opening move of a call bundles a greeting with one or more
self-introductions, so a turn tagged Opening is split into utterances
that each carry their own act. The validator knows this decomposition:
a foreign act inside a segmented Opening is an error.
"""

from dataclasses import replace

from dialact import (
    Corpus,
    Dialogue,
    Modality,
    SpeakerRole,
    Turn,
    make_uid,
    segment_turn,
    validate,
)

turn = Turn(
    uid=make_uid(1, 1),
    speaker=SpeakerRole.OPERATOR,
    text="مساء الخير بنك مصر احمد مع حضرتك",
    overall_act="Opening",
)

segmented = segment_turn(
    turn,
    boundaries=[2, 4],  # split after the 2nd and 4th token
    acts=["Greeting", "Self-Introduce", "Self-Introduce"],
)

print(f"turn {segmented.uid} ({segmented.overall_act}):")
for segment in segmented.segments:
    print(f"  seg{segment.seg_id}: {segment.text!r} -> {segment.act}")

corpus = Corpus(
    dialogues=(
        Dialogue(
            did=1,
            modality=Modality.SPOKEN,
            source="bank",
            turns=(segmented,),
        ),
    )
)

report = validate(corpus)
print(f"\nvalidation: {len(report.errors)} error(s),"
      f" {len(report.warnings)} warning(s)")
for finding in report.findings:
    print(f"  [{finding.severity}] {finding.rule} {finding.path}:"
          f" {finding.message}")

# now break the decomposition rule on purpose
bad_segments = list(segmented.segments)
bad_segments[2] = replace(bad_segments[2], act="Thanking")
broken = Corpus(
    dialogues=(
        replace(
            corpus.dialogues[0],
            turns=(replace(segmented, segments=tuple(bad_segments)),),
        ),
    )
)
print("\nafter retagging the third segment as Thanking:")
for finding in validate(broken).errors:
    print(f"  [{finding.severity}] {finding.rule} {finding.path}:"
          f" {finding.message}")
