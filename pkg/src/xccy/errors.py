"""Exception hierarchy. ``exit_code`` maps each category onto the CLI status."""


class XccyError(Exception):
    exit_code = 1
    category = "error"


class InputError(XccyError, ValueError):
    exit_code = 2
    category = "input"


class SchemaError(InputError):
    category = "schema"


class ConfigurationError(InputError):
    category = "configuration"


class CalibrationError(XccyError):
    exit_code = 3
    category = "calibration"


class PricingError(XccyError):
    exit_code = 4
    category = "pricing"


class OutOfRangeError(PricingError, ValueError):
    category = "out-of-range"


class ExtrapolationError(OutOfRangeError):
    category = "extrapolation"


class FixingDataError(PricingError):
    category = "fixing-data"


class ConventionError(CalibrationError):
    category = "convention"
