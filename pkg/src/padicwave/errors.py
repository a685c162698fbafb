"""Exceptions shared across modules."""


class PreconditionError(ValueError):
    """An operation was called with inputs outside its contract."""


class ParseError(ValueError):
    """A serialized artifact could not be decoded."""
