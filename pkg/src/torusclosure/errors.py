"""Exception hierarchy shared by the library and the CLI."""


class InputError(ValueError):
    """Invalid user input (bad file, bad field data, degenerate lattice...).

    Carries a short machine-readable ``code`` used by the CLI error report.
    """

    exit_code = 2

    def __init__(self, code, message):
        super().__init__(message)
        self.code = code
        self.message = message


class InternalError(RuntimeError):
    """A structural invariant that must hold by construction was violated."""

    exit_code = 3

    def __init__(self, message):
        super().__init__(message)
        self.code = "internal_invariant"
        self.message = message


class ConsistencyError(RuntimeError):
    """Disagreement between independent decision signals on a corpus member."""

    exit_code = 4

    def __init__(self, message):
        super().__init__(message)
        self.code = "consistency_failure"
        self.message = message
