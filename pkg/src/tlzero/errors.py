"""Exception hierarchy; every library error derives from :class:`TLError`."""

from __future__ import annotations


class TLError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TLError, ValueError):
    pass


class NotPerfectMatching(TLError, ValueError):
    pass


class NotPlanar(TLError, ValueError):
    pass


class ParityViolation(TLError, ValueError):
    pass


class DomainMismatch(TLError, ValueError):
    pass


class ContextMismatch(TLError, ValueError):
    pass


class ContextError(TLError, ValueError):
    pass


class ZeroParameter(TLError, ValueError):
    pass


class NotApt(TLError, ValueError):
    pass


class ShapeMismatch(TLError, ValueError):
    pass


class ZeroElement(TLError, ValueError):
    pass


class BoundExceeded(TLError, ValueError):
    pass


class HookTooLarge(TLError, ValueError):
    pass


class BadInterval(TLError, ValueError):
    pass


class InvalidTriple(TLError, ValueError):
    """Base for fiber-triple validation failures; ``report`` holds the details."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotInRadicalProduct(InvalidTriple):
    pass


class TraceNotOne(InvalidTriple):
    pass


class OuterTraceNotZero(TLError, ValueError):
    pass


class SupportViolation(TLError, ValueError):
    pass


class NotHomogeneousEvenType(TLError, ValueError):
    pass
