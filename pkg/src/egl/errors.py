"""Exception types shared across the library."""


class EglError(Exception):
    """Base class for all library errors."""


class StencilOutsideDomain(EglError):
    """A finite-difference stencil point left the declared domain."""


class NonFiniteValue(EglError):
    """An evaluator produced NaN or Inf."""


class DimensionMismatch(EglError):
    """Operands have incompatible ambient dimensions."""


class NotComposable(EglError):
    """Source and target mismatch beyond the composability tolerance."""


class ChartInvalid(EglError):
    """A point violates the validity predicate of its coordinate chart."""


class EndpointMismatch(EglError):
    """Arrow endpoints do not match."""


class StratumMismatch(EglError):
    """Arrows live over strata of different multiplicity."""


class NotTransverse(EglError):
    """Fibre-product factors fail the numerical transversality test."""


class SamplerExhausted(EglError):
    """A rejection sampler could not produce the requested count."""


class DegenerateRadius(EglError):
    """A curve radius is zero or negative where positivity is required."""


class MalformedPresentation(EglError):
    """Group presentation data is internally inconsistent."""


class KTooLarge(EglError):
    """Enumeration bound exceeded for signed-permutation groups."""


class UnknownGenerator(EglError):
    """A word uses a generator the representation does not know."""


class ConfigError(EglError):
    """Invalid run configuration or decision input."""
