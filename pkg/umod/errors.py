from __future__ import annotations


class UmodError(Exception):
    """Base class of every error raised by umod."""


class ElementIndexError(UmodError, IndexError):
    def __init__(self, index: int, size: int) -> None:
        super().__init__(f"Element index {index} out of range for a carrier of size {size}")
        self.index = index
        self.size = size


class PosetError(UmodError, ValueError):
    pass


class AmbientMismatchError(UmodError, ValueError):
    def __init__(self, message: str = "Operands live on different posets") -> None:
        super().__init__(message)


class NotAnUpsetError(UmodError, ValueError):
    pass


class UpsetLimitError(UmodError):
    def __init__(self, size: int, limit: int) -> None:
        super().__init__(
            f"Refusing to enumerate the upsets of a {size}-element poset "
            f"(limit is {limit} elements)"
        )
        self.size = size
        self.limit = limit


class AlgebraError(UmodError, ValueError):
    pass


class NotASubalgebraError(AlgebraError):
    pass


class HomomorphismError(AlgebraError):
    pass


class MorphismError(UmodError, ValueError):
    pass


class PartitionError(UmodError, ValueError):
    pass


class ModelError(UmodError, ValueError):
    pass


class NotIrreducibleError(ModelError):
    def __init__(self, variety: str, clause: str) -> None:
        super().__init__(f"Model is not irreducible for {variety}: {clause}")
        self.variety = variety
        self.clause = clause


class TruncatedModelError(UmodError):
    pass


class TermError(UmodError, ValueError):
    pass


class TermSyntaxError(TermError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundVariableError(TermError):
    def __init__(self, index: int) -> None:
        super().__init__(f"Variable x{index} has no value in the assignment")
        self.index = index


class DocumentError(UmodError, ValueError):
    pass
