"""Exception hierarchy shared by all modules.

Each exception carries an ``exit_code`` used by the command line front end.
"""


class FTRError(Exception):
    """Base class for errors raised by this package."""

    exit_code = 1


class EmptyContour(FTRError):
    """No front was found in a snapshot at the requested threshold."""

    exit_code = 3

    def __init__(self, index=None, threshold=None):
        self.index = index
        self.threshold = threshold
        where = "" if index is None else f" in snapshot {index}"
        msg = f"no front found{where} at threshold {threshold!r}"
        super().__init__(msg)


class ThresholdOutOfRange(FTRError, ValueError):
    exit_code = 4

    def __init__(self, threshold, lo, hi):
        self.threshold = threshold
        super().__init__(
            f"threshold outside data range: {threshold!r} not in [{lo!r}, {hi!r}]"
        )


class RankError(FTRError, ValueError):
    """Requested mode count exceeds the available rank (or is negative)."""

    exit_code = 5


class FormatError(FTRError):
    """Malformed snapshot file."""

    exit_code = 6


class BadMagic(FormatError):
    pass


class VersionMismatch(FormatError):
    pass


class TruncatedPayload(FormatError):
    pass
