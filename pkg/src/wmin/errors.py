"""Domain errors shared across the package."""


class WminError(Exception):
    """Base class for all domain errors."""


class ParameterOutOfRange(WminError):
    """Algebra family parameters outside the admissible range."""


class IsotropicCoroot(WminError):
    """Coroot pairing requested against a root of zero norm."""


class CriticalLevel(WminError):
    """Level arithmetic at k = -h_vee, where everything degenerates."""


class CharacterizationMismatch(WminError):
    """The two extremality tests disagree; catalog data is inconsistent."""


class IndexOutOfSet(WminError):
    """Singular-weight function called with indices outside its index set."""


class PreconditionViolated(WminError):
    """An operation was called outside its stated hypotheses."""


class UnsupportedD21a(WminError):
    """Massless characters for D(2,1;a) with nonzero highest weight are open."""


class NonDominant(WminError):
    """A dominant integral weight was required."""


class WindowTooSmall(WminError):
    """Energy cutoff too small for the requested commutator window."""


class IndexOutOfRange(WminError):
    """Closed-form character parameters outside the admissible range."""


class TruncationIncomplete(WminError):
    """Orbit enumeration hit the hard cap; results would be unsound."""
