"""Exception hierarchy shared by all pcgroup modules."""


class PcgroupError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PcgroupError):
    """Malformed textual input (scalar, map or certificate)."""


class DomainError(PcgroupError):
    """Input outside an operation's domain (bad parameters, wrong group,
    violated precondition, division by zero)."""


class SearchFailure(DomainError):
    """A bounded deterministic search exhausted its budget."""


class NotImplementedInField(PcgroupError):
    """The construction needs a square root that the session field lacks."""


class NotImplementedForGroup(PcgroupError):
    """The operation is not available for the requested group."""
