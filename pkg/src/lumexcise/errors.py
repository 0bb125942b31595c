"""Exception types shared across the package."""


class LumexciseError(Exception):
    """Base class for all domain errors raised by this package."""


class AllUnknownWindow(LumexciseError):
    """A window statistic was requested but the window holds no known pixel."""


class EmptyFront(LumexciseError):
    """A fill-front statistic was requested on an empty front."""


class CandidateInvalid(LumexciseError):
    """A candidate patch overlaps the unknown region or the image border."""


class NoCandidate(LumexciseError):
    """The known region admits no valid candidate window for matching."""


class AllUnknown(LumexciseError):
    """Inpainting was requested on a mask that covers the whole image."""


class EmptyRegion(LumexciseError):
    """Region statistics were requested for a mask with no selected pixel."""
