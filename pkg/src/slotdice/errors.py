"""Exception types shared across the package."""


class SlotDiceError(Exception):
    """Base class for all slotdice errors."""


class ValidationError(SlotDiceError, ValueError):
    """Invalid input: malformed spec, wrong dimensions, bad arguments."""


class RangeError(ValidationError):
    """A roll value or index lies outside its legal range."""


class IllegalMoveError(ValidationError):
    """A placement into an occupied slot or onto a finished board."""


class IncompleteGameError(ValidationError):
    """An operation that needs a finished board was given a partial one."""


class NoMovesError(ValidationError):
    """A move query was made with no free slots."""


class SequencingError(ValidationError):
    """Two-phase roll/commit protocol violated (no or mismatched pending roll)."""


class CapacityError(SlotDiceError):
    """A table or enumeration would exceed its configured size budget."""
