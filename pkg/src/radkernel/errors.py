"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RadkernelError(Exception):
    """Base class for all errors raised by radkernel."""


class FieldMismatch(RadkernelError, TypeError):
    pass


class FieldUnsupported(RadkernelError):
    pass


class NonSquare(RadkernelError):
    pass


class DimensionMismatch(RadkernelError):
    pass


class NonAssociativeTable(RadkernelError):
    pass


class BadUnit(RadkernelError):
    pass


class AlgebraMismatch(RadkernelError):
    pass


class InfiniteDimensional(RadkernelError):
    pass


class Noncommutative(RadkernelError):
    pass


class CharPUnsupported(RadkernelError):
    pass


class ParseError(RadkernelError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}" + (f" in {text!r}" if text else ""))
        self.position = position
        self.text = text


class UnknownVariable(RadkernelError):
    pass


class IdealNotPreserved(RadkernelError):
    def __init__(self, generator: str, image: str):
        super().__init__(
            f"derivation does not descend to the quotient: D({generator}) = {image} "
            "is not in the ideal"
        )
        self.generator = generator
        self.image = image


class LeibnizViolation(RadkernelError):
    def __init__(self, i: int, j: int):
        super().__init__(f"Leibniz rule fails on basis pair ({i}, {j})")
        self.pair = (i, j)


class UnitNotKilled(RadkernelError):
    pass


class NonCommutingTuple(RadkernelError):
    pass


class NoncommutativeEvaluation(RadkernelError):
    pass


class RootFactorizationMismatch(RadkernelError):
    pass


class CharPolyDoesNotSplit(RadkernelError):
    def __init__(self, factor):
        super().__init__(f"characteristic polynomial has a factor without roots in the field: {factor}")
        self.factor = factor


class PointNotInSet(RadkernelError):
    pass


class NoExtremalFound(RadkernelError, AssertionError):
    pass


class NotReduced(RadkernelError):
    pass


class HypothesisFails(RadkernelError):
    def __init__(self, m: int, message: str = ""):
        super().__init__(message or f"hypothesis fails at m = {m}")
        self.m = m


NoncommutativeAlgebra = Noncommutative
