"""Exception types raised by the tmib package."""


class TmibError(Exception):
    """Base class for all package errors."""


class PrefixTooShort(TmibError, ValueError):
    """A finite weight-sequence prefix is too short for the requested quantity."""


class SeriesDivergence(TmibError, ArithmeticError):
    """A weight series did not meet its truncation criterion before the cap."""


class Unsupported(TmibError, NotImplementedError):
    pass


class OffGridShift(TmibError, ValueError):
    """A translation or modulation parameter is not a lattice multiple."""


class GridMismatch(TmibError, ValueError):
    pass


class KindMismatch(TmibError, ValueError):
    pass


class KindUnknown(TmibError, ValueError):
    pass


class ZeroWindow(TmibError, ValueError):
    pass


class ZeroSignal(TmibError, ValueError):
    pass


class SvdFailure(TmibError, ArithmeticError):
    pass


class ExponentRange(TmibError, ValueError):
    pass


class ConfigInvalid(TmibError, ValueError):
    pass


class ParseError(TmibError, ValueError):
    pass


class GridNonUniform(TmibError, ValueError):
    pass
