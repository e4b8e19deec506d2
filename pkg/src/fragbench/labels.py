"""Two-level fragment taxonomy: anatomical origin plus size-ordered instance index.

A fragment is identified by its bone (sacrum, left hip, right hip) and an
index 1..10, where index 1 is the largest fragment of that bone.  The two
levels collapse into a single integer id::

    id = 10 * anatomy_code + index

so ids 1-10 are sacrum fragments, 11-20 left hip, 21-30 right hip.
Id 0 is background; 31 and 32 are reserved and never emitted.  The 30
usable ids map onto bits 0..29 of a 32-bit pixel word in 2D masks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidLabel

MAX_FRAGMENTS_PER_BONE = 10
MAX_LABEL_ID = 3 * MAX_FRAGMENTS_PER_BONE


class AnatomyClass(enum.IntEnum):
    SACRUM = 0
    LEFT_HIP = 1
    RIGHT_HIP = 2


@dataclass(frozen=True, order=True)
class FragmentLabel:
    anatomy: AnatomyClass
    index: int

    def __post_init__(self) -> None:
        if not isinstance(self.anatomy, AnatomyClass):
            object.__setattr__(self, "anatomy", AnatomyClass(self.anatomy))
        if not 1 <= self.index <= MAX_FRAGMENTS_PER_BONE:
            raise InvalidLabel(
                f"fragment index {self.index} outside 1..{MAX_FRAGMENTS_PER_BONE}"
            )

    @property
    def id(self) -> int:
        return encode_label(self)

    def __str__(self) -> str:
        return f"{self.anatomy.name.lower()}:{self.index}"


def encode_label(label: FragmentLabel) -> int:
    """Integer id of a fragment label (bijective with decode_label)."""
    return 10 * int(label.anatomy) + label.index


def decode_label(label_id: int) -> FragmentLabel:
    """Inverse of encode_label; raises InvalidLabel outside 1..30."""
    if not 1 <= label_id <= MAX_LABEL_ID:
        raise InvalidLabel(f"label id {label_id} outside 1..{MAX_LABEL_ID}")
    anatomy, index = divmod(label_id - 1, MAX_FRAGMENTS_PER_BONE)
    return FragmentLabel(AnatomyClass(anatomy), index + 1)


def all_labels() -> tuple[FragmentLabel, ...]:
    """All 30 valid labels in encoded-id order."""
    return tuple(decode_label(i) for i in range(1, MAX_LABEL_ID + 1))


def anatomy_label_ids(anatomy: AnatomyClass) -> range:
    """Encoded ids belonging to one bone (10 consecutive ids)."""
    base = 10 * int(anatomy)
    return range(base + 1, base + MAX_FRAGMENTS_PER_BONE + 1)
