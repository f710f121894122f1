from attr import dataclass


@dataclass(frozen=True)
class Signature:
    """The operations a subalgebra has to be closed under.

    Meet, implication and top are always present. ``nucleus`` adds ``j`` and ``bottom`` adds
    the constant ``0``.
    """

    nucleus: bool = True
    bottom: bool = False

    @property
    def symbols(self) -> str:
        ops = ["&", "->", "1"]
        if self.nucleus:
            ops.append("j")
        if self.bottom:
            ops.append("0")
        return ",".join(ops)


IMPLICATIVE = Signature(nucleus=False)
NUCLEAR = Signature(nucleus=True)
BOUNDED_NUCLEAR = Signature(nucleus=True, bottom=True)
BOUNDED_IMPLICATIVE = Signature(nucleus=False, bottom=True)
