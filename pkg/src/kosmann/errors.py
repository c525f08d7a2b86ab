"""Exception hierarchy shared across the package.

Two bases matter for the service/CLI contract: :class:`InputError` covers
malformed input (bad expression syntax, unreadable geometry files, shape
mismatches in request payloads) and maps to exit code 2, while
:class:`PreconditionError` covers violated mathematical preconditions
(singular metrics, non-Killing fields fed to Killing-only operations, ...)
and maps to exit code 3.
"""


class KosmannError(Exception):
    """Base class for all package-specific errors."""


class InputError(KosmannError):
    """Malformed input: syntax, unknown names, shape mismatches."""


class PreconditionError(KosmannError):
    """A documented mathematical precondition does not hold."""


EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_VERIFICATION = 4
