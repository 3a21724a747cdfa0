"""Exception hierarchy shared by the library and the CLI exit-code map."""


class ChowkitError(Exception):
    """Base class for every library error."""

    kind = "error"


class ParseError(ChowkitError, ValueError):
    kind = "parse-error"


class PreconditionError(ChowkitError, ValueError):
    kind = "precondition-failure"


class SpaceMismatch(PreconditionError):
    kind = "space-mismatch"


class NotMultihomogeneous(PreconditionError):
    kind = "not-multihomogeneous"


class InstanceTooLarge(PreconditionError):
    kind = "instance-too-large"


class DeadlineExceeded(ChowkitError):
    """A Groebner computation ran past one of its :class:`Deadline` limits."""

    kind = "deadline-exceeded"

    def __init__(self, reason, pairs_processed=0, max_degree_seen=0, basis_size=0):
        self.reason = reason
        self.pairs_processed = pairs_processed
        self.max_degree_seen = max_degree_seen
        self.basis_size = basis_size
        super().__init__(
            f"deadline exceeded ({reason}): pairs processed={pairs_processed}, "
            f"max degree seen={max_degree_seen}, basis size={basis_size}"
        )


class NotPrincipal(ChowkitError):
    kind = "not-principal"

    def __init__(self, message, basis_size=None):
        self.basis_size = basis_size
        super().__init__(message)


class ZeroIdeal(NotPrincipal):
    kind = "zero-ideal"


class UnstableCount(ChowkitError):
    kind = "unstable-count"
