"""Exception types shared across the package."""

from __future__ import annotations


class AffRKLError(Exception):
    """Base class for every error raised by the library."""

    code = "error"

    def to_json(self) -> dict:
        return {"error": self.code, "message": str(self)}


class InvalidGCM(AffRKLError, ValueError):
    code = "InvalidGCM"


class CutoffExceeded(AffRKLError):
    """A greedy or breadth-first search ran out of its step budget."""

    code = "CutoffExceeded"


class CutoffInconclusive(AffRKLError):
    """A bounded check could not certify its answer within the cutoff."""

    code = "CutoffInconclusive"


class NotSpherical(AffRKLError):
    """The fixator W_J of a coweight is infinite."""

    code = "NotSpherical"

    def __init__(self, J, message: str | None = None):
        self.J = tuple(J)
        super().__init__(message or f"parabolic subgroup of type J={list(self.J)} is infinite")

    def to_json(self) -> dict:
        out = super().to_json()
        out["J"] = [j + 1 for j in self.J]
        return out


class BaseMismatch(AffRKLError, ValueError):
    code = "BaseMismatch"


class SignMismatch(AffRKLError, ValueError):
    code = "SignMismatch"


class NotDominating(AffRKLError, ValueError):
    code = "NotDominating"


class NotOnWall(AffRKLError, ValueError):
    code = "NotOnWall"


class DegeneratePath(AffRKLError, ValueError):
    code = "DegeneratePath"
