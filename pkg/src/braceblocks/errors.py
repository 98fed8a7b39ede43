"""Exception types raised by the toolkit.

Construction errors carry a witness (the offending element, pair or triple)
so callers can report exactly what broke.
"""

from __future__ import annotations


class BraceBlocksError(Exception):
    """Base class for all toolkit errors."""


class BadParameters(BraceBlocksError):
    """A catalog constructor or map builder was given invalid parameters."""


class TooLarge(BraceBlocksError):
    """The requested object exceeds the desk-scale budget."""


class NoIdentity(BraceBlocksError):
    """Index 0 does not act as a two-sided identity."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"index 0 is not an identity: fails at element {element}")


class MissingInverse(BraceBlocksError):
    """Some element has no two-sided inverse."""

    def __init__(self, element: int):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class NotAssociative(BraceBlocksError):
    """The table violates associativity at the witness triple."""

    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        g, h, k = triple
        super().__init__(f"not associative: ({g}*{h})*{k} != {g}*({h}*{k})")


class NotAHomomorphism(BraceBlocksError):
    """Generator images do not extend to an endomorphism."""


class NotEndomorphism(BraceBlocksError):
    """A map that must be an endomorphism is not one."""


class NotAbelian(BraceBlocksError):
    """The map is not an abelian map (image is nonabelian)."""


class NotInvolution(BraceBlocksError):
    """The chosen permutation does not square to the identity."""


class NotCommutatorCentral(BraceBlocksError):
    """The map does not send the commutator subgroup into the center."""


class NotABrace(BraceBlocksError):
    """The given operation pair fails the brace relation."""

    def __init__(self, witness: tuple[int, int, int] | None = None):
        self.witness = witness
        detail = f" at triple {witness}" if witness is not None else ""
        super().__init__(f"operations do not form a brace{detail}")


class ImagesDoNotCommute(BraceBlocksError):
    """Two source maps have images that do not commute modulo the center."""

    def __init__(self, first: str, second: str, witness: tuple[int, int]):
        self.first = first
        self.second = second
        self.witness = witness
        super().__init__(
            f"images of {first} and {second} do not commute mod center "
            f"(witness image pair {witness})"
        )


class BraceFailure(BraceBlocksError):
    """A block pair failed exhaustive brace verification; signals a bug."""

    def __init__(self, first: str, second: str, witness: tuple[int, int, int]):
        self.first = first
        self.second = second
        self.witness = witness
        super().__init__(
            f"brace relation fails for ops ({first}, {second}) at triple {witness}"
        )


class EmptyBlock(BraceBlocksError):
    """A brace block needs at least one source operation."""


class SpecSyntaxError(BraceBlocksError):
    """A word-spec or map-spec string could not be parsed; names the token."""
