"""Exceptions shared across the package."""


class TspVqeError(Exception):
    """Base class for all package errors."""


class ValidationError(TspVqeError):
    """Invalid instance data, polynomial, or operation argument."""


class ParseError(ValidationError):
    """Malformed input file; the message carries a line/field locus."""


class SizeCapError(TspVqeError):
    """An exhaustive operation was refused because the instance is too large."""
