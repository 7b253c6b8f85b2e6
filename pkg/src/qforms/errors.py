"""Exception types shared across the package."""


class QFormsError(Exception):
    pass


class InvalidElement(QFormsError, ValueError):
    """A group element or ring element is not valid for its group."""


class ContextMismatch(QFormsError, ValueError):
    """Operands live over different groups, rings, or modules."""


class PreconditionViolation(QFormsError, ValueError):
    """An operation's stated precondition does not hold.

    ``condition`` names the failed check so callers (and the CLI) can
    report it without parsing the message.
    """

    def __init__(self, condition, message=None):
        self.condition = condition
        super().__init__(f"{condition}: {message}" if message else condition)


class InternalCheckFailed(QFormsError, AssertionError):
    """A construction that should always succeed produced an invalid object."""


class Unsupported(QFormsError, NotImplementedError):
    pass
