"""Exception hierarchy shared by all modules.

The CLI maps :class:`InputError` to exit code 2 and :class:`ResourceLimit`
to exit code 3.
"""


class InputError(ValueError):
    """Malformed user input (formula text, model file, proof file)."""


class ParseError(InputError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class DialectError(InputError):
    def __init__(self, message: str, node=None):
        super().__init__(message)
        self.node = node


class ModelError(InputError):
    """Invalid BD model or weight assignment."""


class ResourceLimit(RuntimeError):
    """A configured cap (variables, branches, instances) was exceeded."""
