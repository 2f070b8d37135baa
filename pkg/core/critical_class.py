from enum import Enum, auto


class CriticalClass(Enum):
    """Kinds of critical configurations of the signed area."""
    REGULAR_STAR = auto()
    ZIGZAG_STAR = auto()
    ZIGZAG_TRAIN = auto()     # one-parameter branch, n even
    DEGENERATE_STAR = auto()  # all angles 0
    COMPLETE_FOLD = auto()    # all angles pi, n even

    def __str__(self):
        return ''.join(part.capitalize() for part in self.name.split('_'))

    @classmethod
    def from_label(cls, label: str) -> 'CriticalClass':
        for member in cls:
            if str(member) == label or member.name == label:
                return member
        raise ValueError(f"unknown critical class {label!r}")

    @property
    def is_isolated_star(self) -> bool:
        return self in (CriticalClass.REGULAR_STAR, CriticalClass.ZIGZAG_STAR)
