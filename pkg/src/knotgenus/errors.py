"""Exception types shared across the package.

Exit-code mapping used by the CLI: domain errors exit 1, data-integrity
errors exit 2, failed verifications exit 3.
"""


class DomainError(ValueError):
    """An input violates an operation's mathematical precondition."""


class DataIntegrityError(ValueError):
    """Bundled or user-supplied data fails a consistency check."""


class OnJumpError(DomainError):
    """Signature evaluation requested exactly at a jump of the signature
    function.  Carries the two one-sided values."""

    def __init__(self, message, left_value, right_value):
        super().__init__(message)
        self.left_value = left_value
        self.right_value = right_value
