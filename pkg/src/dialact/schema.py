"""Dialogue-act inventory for Arabic inquiry-answer dialogues.

The built-in registry holds 25 acts split over three dimensions: Request
acts cover question and request moves, Response acts cover answers and
reactive moves, and the Other dimension holds the conversation-structure
acts Opening, Closing and Self-Introduce. Act names are matched
case-insensitively and ignore hyphens, underscores and spaces, so
"SelfIntroduce" and "self-introduce" both resolve to "Self-Introduce".

Registries are immutable after construction and safe to share between
threads. Custom act sets can be built through :class:`AnnotationSchema`
directly; everything else in the toolkit defaults to
:func:`builtin_schema`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

__all__ = [
    "BUILTIN_SCHEMA_NAME",
    "AnnotationSchema",
    "DialogueAct",
    "Dimension",
    "builtin_schema",
    "normalize_act_name",
]

BUILTIN_SCHEMA_NAME = "arabic-inquiry-answer"


class Dimension(Enum):
    """The three act groupings."""

    REQUEST = "Request"
    RESPONSE = "Response"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value


_NORMALIZE_RE = re.compile(r"[\s_-]+")


def normalize_act_name(name: str) -> str:
    """Collapse case, hyphens, underscores and whitespace for lookup."""
    return _NORMALIZE_RE.sub("", name).casefold()


@dataclass(frozen=True)
class DialogueAct:
    """One label of the inventory.

    ``subfunctions`` lists the finer-grained functions an act aggregates
    (only Agree and Disagree carry any); they are documentation and UI
    metadata, never annotation targets.
    """

    name: str
    dimension: Dimension
    definition: str
    subfunctions: tuple[str, ...] = ()

    @property
    def key(self) -> str:
        return normalize_act_name(self.name)


@dataclass(frozen=True)
class AnnotationSchema:
    """Immutable, ordered act registry with normalized-name lookup."""

    name: str
    acts: tuple[DialogueAct, ...]
    _by_key: dict[str, DialogueAct] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "acts", tuple(self.acts))
        by_key: dict[str, DialogueAct] = {}
        for act in self.acts:
            if act.key in by_key:
                raise ValueError(f"duplicate act name: {act.name!r}")
            by_key[act.key] = act
        object.__setattr__(self, "_by_key", by_key)

    def __len__(self) -> int:
        return len(self.acts)

    def __iter__(self):
        return iter(self.acts)

    def lookup(self, name: str) -> DialogueAct | None:
        """Return the act whose normalized name matches, else None."""
        return self._by_key.get(normalize_act_name(name))

    def acts_in(self, dimension: Dimension) -> tuple[DialogueAct, ...]:
        """All acts of one dimension, in registry order."""
        return tuple(a for a in self.acts if a.dimension is dimension)


_AGREE_SUBFUNCTIONS = (
    "accept-confirmation",
    "yes-answer",
    "accept-thanking",
    "accept-apology",
)
_DISAGREE_SUBFUNCTIONS = (
    "disconfirm",
    "no-answer",
    "reject-thanking",
    "reject-apology",
)

_REQUEST_ACTS = (
    ("Taking-Request", "Dealing with taking request e.g. hello"),
    (
        "Service-Question",
        "Dealing with services request e.g. asking about service information"
        " or required a service.",
    ),
    (
        "Confirm-Question",
        "Happens when needs to confirmation about some information.",
    ),
    ("YesNo-Question", "Happens when needs Yes or No answer."),
    (
        "Choice-Question",
        "Happens when needs select one answer from service multiple-choices"
        " question.",
    ),
    (
        "Other-Question",
        "Happens when asking about non-service question e.g. mobile number,"
        " email, or address.",
    ),
    (
        "Turn-Assign",
        "Happens when wants to addressee the speaker to take the turn"
        " e.g. Adam?",
    ),
)

_RESPONSE_ACTS = (
    (
        "Service-Answer",
        "Happens when answer a Service-Question or Choice-Question.",
    ),
    ("Other-Answer", "Happens when answer an Other-Question."),
    (
        "Agree",
        "Describe agreement/accept answer from Confirm-Question or"
        " YesNo-Question.",
    ),
    (
        "Disagree",
        "Describe disagreement/reject answer from Confirm-Question or"
        " YesNo-Question.",
    ),
    (
        "Greeting",
        "Happens when speaker wants to greeting and welcome the other"
        " speaker. Also describe greeting accept 'return-greeting'.",
    ),
    (
        "Inform",
        "Happens when speaker wants to explain or describe something to"
        " other speaker.",
    ),
    (
        "Thanking",
        "Happens when speaker wants to thank the other speaker. Also"
        " describe thanking accept.",
    ),
    ("Apology", "Happens when speaker wants to apology."),
    (
        "MissUnderstandingSign",
        "Happens when non-understanding the previous utterance.",
    ),
    (
        "Correct",
        "Happens when correct an information in previous utterance or in"
        " current utterance.",
    ),
    (
        "Pausing",
        "Happens when needs to request more time or stealing time e.g. just"
        " a moment.",
    ),
    ("Suggest", "Happens when provides a suggestion."),
    ("Promise", "Happens when provides a promise."),
    ("Warning", "Happens when provides a warning action."),
    ("Offer", "Happens when provides an offer to the customer."),
)

_OTHER_ACTS = (
    (
        "Opening",
        'Dealing with opening obligation utterance e.g. "Good evening,'
        ' Banque Misr, Ahmed Samy speaking".',
    ),
    (
        "Closing",
        'Dealing with closing obligation request e.g. "Thank you for calling'
        ' and goodbye".',
    ),
    (
        "Self-Introduce",
        "Happens when wants to introduce our self or organization.",
    ),
)

_SUBFUNCTIONS = {
    "Agree": _AGREE_SUBFUNCTIONS,
    "Disagree": _DISAGREE_SUBFUNCTIONS,
}


@lru_cache(maxsize=1)
def builtin_schema() -> AnnotationSchema:
    """The 25-act inquiry-answer registry (7 Request, 15 Response, 3 Other)."""
    acts = []
    for dimension, rows in (
        (Dimension.REQUEST, _REQUEST_ACTS),
        (Dimension.RESPONSE, _RESPONSE_ACTS),
        (Dimension.OTHER, _OTHER_ACTS),
    ):
        for name, definition in rows:
            acts.append(
                DialogueAct(
                    name=name,
                    dimension=dimension,
                    definition=definition,
                    subfunctions=_SUBFUNCTIONS.get(name, ()),
                )
            )
    return AnnotationSchema(name=BUILTIN_SCHEMA_NAME, acts=tuple(acts))
