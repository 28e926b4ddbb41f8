"""Exception types shared across the toolkit."""


class FilterDesignError(Exception):
    """Base class for failures in the design pipeline."""


class ConfigurationError(FilterDesignError):
    """Required configuration is missing (no explicit length and no ripples)."""


class InfeasibleSpecError(FilterDesignError):
    """The requested bands cannot be represented at the chosen FFT length."""


class ConditioningError(FilterDesignError):
    """The normal equations are too ill-conditioned to solve reliably."""

    def __init__(self, message, condition_estimate=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate
