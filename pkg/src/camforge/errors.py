"""Exception taxonomy. Grouped so the CLI can map failure classes to exit codes."""


class CamForgeError(Exception):
    """Base class for all camforge errors."""


# --- domain errors (invalid inputs to library operations) ---

class DimensionMismatch(CamForgeError):
    """Operands do not share the required shape."""


class NonFiniteInput(CamForgeError):
    """An input array contains NaN or infinity."""


class EmptyMap(CamForgeError):
    """A map has a zero-sized dimension."""


class ClassSetMismatch(CamForgeError):
    """Two stacks do not carry the same class ids."""


class EmptyStack(CamForgeError):
    """A stack with no class entries where at least one is required."""


class LabelOutOfRange(CamForgeError):
    """A non-ignore label does not fit the declared class count."""


class EmptyMatrix(CamForgeError):
    """No pixels have been accumulated into the confusion matrix."""


class InvalidArchitecture(CamForgeError):
    """Layer list violates channel chaining or spatial-scaling constraints."""


class ShapeError(CamForgeError):
    """Tensor shape incompatible with the network or optimizer state."""


# optimizer-facing alias; same failure class
ShapeMismatch = ShapeError


class DomainError(CamForgeError):
    """A value sits outside the mathematical domain of an operation."""


class StaleCache(CamForgeError):
    """A backward pass received a cache inconsistent with its gradient."""


class EmptyDataset(CamForgeError):
    """Training requested on an empty dataset."""


class IndivisibleDimensions(CamForgeError):
    """Array dimensions not divisible by the requested pooling factor."""


class PlacementFailure(CamForgeError):
    """Synthetic shapes could not be placed within the retry budget."""


# --- file-format errors ---

class FormatError(CamForgeError):
    """Base class for on-disk format violations."""


class BadMagic(FormatError):
    """File does not start with the NPY magic string."""


class UnsupportedDtype(FormatError):
    """NPY header declares a dtype outside the supported set."""


class HeaderParse(FormatError):
    """NPY header is malformed or declares unsupported layout/shape."""


class TruncatedPayload(FormatError):
    """NPY payload size does not match the header's shape."""


class BadPng(FormatError):
    """File is not a decodable PNG."""


class DepthMismatch(FormatError):
    """PNG is not 8-bit single-channel."""


# --- CLI errors ---

class ConfigError(CamForgeError):
    """Run configuration is missing, malformed, or out of range."""


class IoError(CamForgeError):
    """A referenced path is missing, unreadable, or locked."""
