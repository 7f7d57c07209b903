from typing import Any


class SecrecySimError(Exception):
    """Runtime failure surfaced by the command line with a stable exit code."""

    exit_code = 1

    def __init__(self, detail: Any = None):
        self.detail = detail
        super().__init__(detail)


class UsageError(SecrecySimError):
    exit_code = 2


class InvalidParameterError(ValueError):
    pass


class EmptyInputError(ValueError):
    pass


class SingularityError(ValueError):
    """A capacity was requested at zero distance, where it diverges."""


class UnknownAxisError(ValueError):
    def __init__(self, axis: str, valid: list[str]):
        self.axis = axis
        self.valid = list(valid)
        super().__init__(f"unknown sweep axis {axis!r}; valid axes: {', '.join(self.valid)}")
