"""Exception hierarchy shared across the package."""


class RiskspanError(Exception):
    """Base class for all errors raised by riskspan."""


class ValidationError(RiskspanError):
    """Malformed input: bad schema, bad literal, inconsistent shapes."""


class SpaceMismatchError(ValidationError):
    """Two operands live on different probability spaces."""


class PreconditionError(RiskspanError):
    """A documented operation precondition does not hold."""


class KBoundViolationError(PreconditionError):
    """A sequence element escapes the stated gauge bound (Fatou probe)."""


class CertificateError(RiskspanError):
    """An LP certificate failed exact re-validation."""
