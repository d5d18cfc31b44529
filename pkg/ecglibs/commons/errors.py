# EpyECG/ecglibs/commons/errors.py


class EpyECGError(Exception):
    """
    Base class for errors raised by ecglibs.
    """


class ConfigurationError(EpyECGError, ValueError):
    """
    Invalid settings or configuration values (filter cutoffs, architecture, split plan...).

    :param message: Diagnostic message.
    :type message: str

    :param key: Offending configuration key, defaults to `None`.
    :type key: str or NoneType, optional
    """

    def __init__(self, message, key=None):
        self.key = key

        if key:
            message = '%s: %s' % (key, message)

        super().__init__(message)


class ArgumentError(EpyECGError, ValueError):
    """
    Invalid argument passed to an operation (shape mismatch, out of range length...).
    """


class DataFormatError(EpyECGError, ValueError):
    """
    Malformed recording, beat dataset or checkpoint file.
    """


class TrainingError(EpyECGError, RuntimeError):
    """
    Training aborted, for instance on non-finite loss.
    """


# Exit status of command line interface per error category
EXIT_CODES = {
    ConfigurationError: 2,
    ArgumentError: 3,
    DataFormatError: 4,
    TrainingError: 5,
}
