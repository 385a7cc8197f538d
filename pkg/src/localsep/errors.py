"""Exception types shared across the library.

The CLI maps these onto exit codes: InputError -> 2, BudgetExceededError -> 3,
VerificationError -> 1.  Everything else is a bug.
"""


class LocalSepError(Exception):
    """Base class for all library errors."""


class InputError(LocalSepError):
    """Malformed input: unknown vertex ids, bad edge lists, bad flags."""


class UnitLengthError(InputError):
    """An operation that requires unit edge lengths saw a weighted graph."""


class BudgetExceededError(LocalSepError):
    """The node-expansion budget of an exhaustive search was exhausted.

    This is a hard error, never a silent truncation: results computed from a
    truncated cycle enumeration would be wrong.
    """


class NotASeparatorError(LocalSepError):
    """A cutting operation was asked to cut at a pair that does not separate."""


class SurgeryError(LocalSepError):
    """A rewriting operation hit an undefined case (loop at a cut vertex,
    missing detour for a torso weight, missing lift witness)."""


class SumError(LocalSepError):
    """A local 2-sum specification violates validity or r-locality."""


class PipelineError(LocalSepError):
    """A decomposition pipeline precondition failed."""


class VerificationError(LocalSepError):
    """An invariant that the theory guarantees was found violated, or a
    stored decomposition failed re-verification."""
