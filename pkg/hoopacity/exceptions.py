from typing import Optional, Sequence, Union


class OpacityError(Exception):
    """Base error; ``exit_code`` is what the CLI returns when it escapes."""

    exit_code = 2

    def __init__(self, detail: str = None, exit_code: int = None):
        self.detail = detail or "Error"
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(self.detail)


class UsageError(OpacityError):
    pass


class ModelParseError(OpacityError):
    def __init__(
        self,
        detail: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        location: Sequence[Union[str, int]] = (),
    ):
        self.line = line
        self.column = column
        self.location = tuple(location)
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        elif self.location:
            where = "/".join(str(part) for part in self.location) + ": "
        super().__init__(f"{where}{detail}")


class ModelValidationError(OpacityError):
    pass


class StateLimitExceeded(OpacityError):
    def __init__(self, what: str, limit: int):
        self.limit = limit
        super().__init__(
            f"{what} exceeded {limit} states (raise HOOPACITY_MAX_STATES or pass max_states)"
        )


class ConstructionError(OpacityError):
    exit_code = 3


class MethodDisagreement(ConstructionError):
    pass
