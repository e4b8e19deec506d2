"""Exception hierarchy for the benchmark engine.

Everything derives from FragbenchError so callers can catch broadly; the
CLI maps FragbenchError to exit code 1 (input problem) and anything else
to exit code 2 (internal error).
"""


class FragbenchError(Exception):
    """Base class for all errors raised by this package."""


class InvalidLabel(FragbenchError):
    """Label id or fragment index outside the taxonomy."""


class GridMismatch(FragbenchError):
    """Two containers do not share dims/spacing/offset."""


class KindMismatch(FragbenchError):
    """Mixed 3D volume and 2D mask passed to a pairwise operation."""


class EmptyMask(FragbenchError):
    """Operation requires a nonempty mask."""


class EmptySurface(FragbenchError):
    """Surface distance requested on an empty surface point set."""


class NoGroundTruth(FragbenchError):
    """Ground truth contains no fragments."""


class CaseAlignmentError(FragbenchError):
    """Teams in one study do not cover the same cases in the same order."""


class LengthMismatch(FragbenchError):
    """Paired sequences differ in length."""


class DegenerateTest(FragbenchError):
    """Statistical test undefined for the given samples (e.g. all-zero differences)."""


class InsufficientTeams(FragbenchError):
    """Ranking needs at least two teams."""


class EnergyRangeError(FragbenchError):
    """Spectrum energies fall outside the attenuation table coverage."""


class ParseError(FragbenchError):
    """Malformed input file."""


class UnsupportedFormat(FragbenchError):
    """File is syntactically valid but uses an unsupported encoding."""


class ManifestError(FragbenchError):
    """Study manifest is missing entries or inconsistent."""
