"""Exception hierarchy.

Every domain error carries its class name verbatim into CLI error reports,
so the names below are part of the public interface.
"""

from __future__ import annotations


class ToricRootsError(Exception):
    """Base class for all domain errors raised by the library."""

    @property
    def name(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict:
        return {"name": self.name, "detail": str(self)}


class ZeroVector(ToricRootsError):
    pass


class DimensionMismatch(ToricRootsError):
    pass


class NotPrimitive(ToricRootsError):
    pass


class DuplicateRay(ToricRootsError):
    pass


class EmptyFan(ToricRootsError):
    pass


class MalformedCone(ToricRootsError):
    pass


class MalformedFan(ToricRootsError):
    pass


class RaysDontSpan(ToricRootsError):
    pass


class DependentDirections(ToricRootsError):
    pass


class NotIntegral(ToricRootsError):
    pass


class NotTorsion(ToricRootsError):
    pass


class BadN(ToricRootsError):
    pass


class SigmaTooSmall(ToricRootsError):
    pass


class NotNTorsion(ToricRootsError):
    pass


class OutOfRange(ToricRootsError):
    pass


class ZeroInput(ToricRootsError):
    pass


class LevelTooSmall(ToricRootsError):
    pass


class NotRootOfUnity(ToricRootsError):
    pass


class BadInput(ToricRootsError):
    pass


class VerificationError(ToricRootsError):
    """An exact post-condition check failed; indicates a library bug."""
