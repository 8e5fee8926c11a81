"""Error types raised by the library; the command layer maps them to exit codes."""


class SpectraError(Exception):
    """Base class for every error raised by simplex_spectra"""


class MalformedInputError(SpectraError, ValueError):
    """Input that cannot describe a valid complex, face, weight or flag"""


class UnknownFaceError(MalformedInputError, KeyError):
    """A face (or signed-graph vertex) that is not part of the complex"""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep plain messages
        return str(self.args[0]) if self.args else ""


class NotASubcomplexError(MalformedInputError):
    """A candidate subcomplex has a face missing from the ambient complex"""


class WeightError(MalformedInputError):
    """Nonpositive, missing or mislabelled weights"""


class DimensionError(MalformedInputError):
    """A dimension index outside the range an operation accepts"""


class ConsistencyError(SpectraError, RuntimeError):
    """An internal cross-check failed"""


class ConvergenceError(ConsistencyError):
    """The eigensolver hit its sweep cap before converging"""
