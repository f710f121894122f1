from typing import Any, Dict, List, Optional, Union
import json

import attr
from attr import dataclass
from mautrix.types import SerializableAttrs, SerializerError

from ..algebra import FiniteAlgebra
from ..coloring import Model, Variety, color_mask, color_set
from ..errors import AlgebraError, DocumentError
from ..poset import Poset
from ..universal import LayeredModel, TruncationReport, UElement
from ..upsets import SPoset
from ..util import bits_of

FORMAT_VERSION = 1


class DocumentKind(str):
    MODEL = "model"
    ALGEBRA = "algebra"
    SUBALGEBRAS = "subalgebras"
    VERIFICATION = "verification"


@dataclass
class SymbolDocument(SerializableAttrs):
    kind: str = attr.ib(metadata={"json": "kind"})
    cover: List[int] = attr.ib(metadata={"json": "cover"})
    color: List[int] = attr.ib(metadata={"json": "color"})
    layer: int = attr.ib(metadata={"json": "layer"})
    rule: int = attr.ib(default=0, metadata={"json": "rule"})

    @classmethod
    def from_element(cls, element: UElement) -> "SymbolDocument":
        return cls(
            kind=element.kind,
            cover=sorted(element.cover),
            color=sorted(color_set(element.color)),
            layer=element.layer,
            rule=element.rule,
        )

    def to_element(self) -> UElement:
        return UElement(self.kind, self.cover, color_mask(self.color), self.layer, self.rule)


@dataclass
class TruncationDocument(SerializableAttrs):
    reason: str = attr.ib(metadata={"json": "reason"})
    completed_layers: int = attr.ib(metadata={"json": "completed_layers"})
    elements: int = attr.ib(metadata={"json": "elements"})
    height_lower_bound: int = attr.ib(metadata={"json": "height_lower_bound"})


@dataclass
class ModelDocument(SerializableAttrs):
    """A colored S-poset on disk. ``covers`` are ``[lower, upper]`` index pairs."""

    n_elements: int = attr.ib(metadata={"json": "n_elements"})
    covers: List[List[int]] = attr.ib(factory=list, metadata={"json": "covers"})
    s: List[int] = attr.ib(factory=list, metadata={"json": "s"})
    names: Optional[List[str]] = attr.ib(default=None, metadata={"json": "names"})
    colors: Optional[List[List[int]]] = attr.ib(default=None, metadata={"json": "colors"})
    n_vars: Optional[int] = attr.ib(default=None, metadata={"json": "n_vars"})
    variant: Optional[str] = attr.ib(default=None, metadata={"json": "variant"})
    layers: Optional[List[int]] = attr.ib(default=None, metadata={"json": "layers"})
    symbols: Optional[List[SymbolDocument]] = attr.ib(default=None, metadata={"json": "symbols"})
    truncated: bool = attr.ib(default=False, metadata={"json": "truncated"})
    truncation: Optional[TruncationDocument] = attr.ib(
        default=None, metadata={"json": "truncation"}
    )
    kind: str = attr.ib(default=DocumentKind.MODEL, metadata={"json": "kind"})
    format_version: int = attr.ib(default=FORMAT_VERSION, metadata={"json": "format_version"})

    @classmethod
    def from_sposet(cls, sposet: SPoset) -> "ModelDocument":
        poset = sposet.poset
        return cls(
            n_elements=poset.size,
            covers=[list(pair) for pair in sorted(poset.covers)],
            s=sorted(sposet.s_set),
            names=list(poset.names) if poset.names is not None else None,
        )

    @classmethod
    def from_model(cls, model: Model, variety: Optional[Variety] = None) -> "ModelDocument":
        document = cls.from_sposet(model.sposet)
        document.colors = [sorted(model.color(x)) for x in range(model.poset.size)]
        document.n_vars = model.n
        document.variant = variety.value if variety is not None else None
        return document

    @classmethod
    def from_layered(cls, layered: LayeredModel) -> "ModelDocument":
        document = cls.from_model(layered.model, layered.variety)
        document.layers = [e.layer for e in layered.elements]
        document.symbols = [SymbolDocument.from_element(e) for e in layered.elements]
        if layered.truncation is not None:
            document.truncated = True
            document.truncation = TruncationDocument(**attr.asdict(layered.truncation))
        return document

    def to_sposet(self) -> SPoset:
        covers = {(lower, upper) for lower, upper in self.covers}
        poset = Poset(self.n_elements, covers, self.names)
        return SPoset(poset, bits_of(self.s))

    def to_model(self, n: Optional[int] = None) -> Model:
        n_vars = n if n is not None else self.n_vars
        if n_vars is None:
            n_vars = max((max(color, default=0) for color in self.colors or []), default=0)
        colors = self.colors if self.colors is not None else [[]] * self.n_elements
        if len(colors) != self.n_elements:
            raise DocumentError(f"Expected {self.n_elements} colors, got {len(colors)}")
        return Model(self.to_sposet(), n_vars, [color_mask(color) for color in colors])

    def to_layered(self) -> LayeredModel:
        if self.symbols is None or self.variant is None:
            raise DocumentError("Document does not describe a universal model")
        try:
            variety = Variety(self.variant)
        except ValueError as e:
            raise DocumentError(f"Unknown variant {self.variant!r}") from e
        truncation = None
        if self.truncation is not None:
            truncation = TruncationReport(**self.truncation.serialize())
        return LayeredModel.assemble(
            self.n_vars or 0,
            variety,
            [symbol.to_element() for symbol in self.symbols],
            truncation,
        )


@dataclass
class AlgebraDocument(SerializableAttrs):
    size: int = attr.ib(metadata={"json": "size"})
    meet: List[List[int]] = attr.ib(metadata={"json": "meet"})
    imp: List[List[int]] = attr.ib(metadata={"json": "imp"})
    top: int = attr.ib(metadata={"json": "top"})
    hasse: List[List[int]] = attr.ib(factory=list, metadata={"json": "hasse"})
    labels: Optional[List[str]] = attr.ib(default=None, metadata={"json": "labels"})
    nucleus: Optional[List[int]] = attr.ib(default=None, metadata={"json": "nucleus"})
    bottom: Optional[int] = attr.ib(default=None, metadata={"json": "bottom"})
    generators: Optional[List[int]] = attr.ib(default=None, metadata={"json": "generators"})
    n_vars: Optional[int] = attr.ib(default=None, metadata={"json": "n_vars"})
    variant: Optional[str] = attr.ib(default=None, metadata={"json": "variant"})
    kind: str = attr.ib(default=DocumentKind.ALGEBRA, metadata={"json": "kind"})
    format_version: int = attr.ib(default=FORMAT_VERSION, metadata={"json": "format_version"})

    @classmethod
    def from_algebra(cls, algebra: FiniteAlgebra) -> "AlgebraDocument":
        return cls(
            size=algebra.size,
            meet=[list(row) for row in algebra.meet_table],
            imp=[list(row) for row in algebra.imp_table],
            top=algebra.top,
            hasse=[list(pair) for pair in algebra.hasse_covers()],
            labels=list(algebra.labels) if algebra.labels is not None else None,
            nucleus=list(algebra.nucleus) if algebra.nucleus is not None else None,
            bottom=algebra.bottom,
        )

    def to_algebra(self) -> FiniteAlgebra:
        try:
            return FiniteAlgebra(
                self.meet, self.imp, self.top, self.nucleus, self.bottom, self.labels
            )
        except (AlgebraError, IndexError) as e:
            raise DocumentError(f"Tables do not describe an algebra: {e}") from e


@dataclass
class PartitionDocument(SerializableAttrs):
    domain: List[int] = attr.ib(metadata={"json": "domain"})
    classes: List[List[int]] = attr.ib(metadata={"json": "classes"})
    total: bool = attr.ib(metadata={"json": "total"})
    strict_heyting: bool = attr.ib(metadata={"json": "strict_heyting"})
    subalgebra_size: int = attr.ib(metadata={"json": "subalgebra_size"})
    nuclear: Optional[bool] = attr.ib(default=None, metadata={"json": "nuclear"})


@dataclass
class SubalgebraReport(SerializableAttrs):
    mode: str = attr.ib(metadata={"json": "mode"})
    partitions: List[PartitionDocument] = attr.ib(factory=list, metadata={"json": "partitions"})
    sizes: Optional[List[int]] = attr.ib(default=None, metadata={"json": "sizes"})
    kind: str = attr.ib(default=DocumentKind.SUBALGEBRAS, metadata={"json": "kind"})
    format_version: int = attr.ib(default=FORMAT_VERSION, metadata={"json": "format_version"})


@dataclass
class SuiteDocument(SerializableAttrs):
    name: str = attr.ib(metadata={"json": "name"})
    checked: int = attr.ib(metadata={"json": "checked"})
    failures: List[str] = attr.ib(factory=list, metadata={"json": "failures"})


@dataclass
class VerificationReport(SerializableAttrs):
    max_size: int = attr.ib(metadata={"json": "max_size"})
    suites: List[SuiteDocument] = attr.ib(factory=list, metadata={"json": "suites"})
    kind: str = attr.ib(default=DocumentKind.VERIFICATION, metadata={"json": "kind"})
    format_version: int = attr.ib(default=FORMAT_VERSION, metadata={"json": "format_version"})


Document = Union[ModelDocument, AlgebraDocument, SubalgebraReport, VerificationReport]

_KINDS = {
    DocumentKind.MODEL: ModelDocument,
    DocumentKind.ALGEBRA: AlgebraDocument,
    DocumentKind.SUBALGEBRAS: SubalgebraReport,
    DocumentKind.VERIFICATION: VerificationReport,
}


def dumps(document: Document) -> str:
    return json.dumps(document.serialize(), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Document:
    try:
        data: Dict[str, Any] = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"Not a JSON document: {e}") from e
    if not isinstance(data, dict):
        raise DocumentError("Document must be a JSON object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DocumentError(f"Unsupported format version {version}")
    kind = data.get("kind", DocumentKind.MODEL)
    if kind not in _KINDS:
        raise DocumentError(f"Unknown document kind {kind!r}")
    try:
        return _KINDS[kind].deserialize(data)
    except (SerializerError, KeyError, TypeError, ValueError) as e:
        raise DocumentError(f"Malformed {kind} document: {e}") from e


def read_document(path: str) -> Document:
    try:
        with open(path) as file:
            return loads(file.read())
    except OSError as e:
        raise DocumentError(f"Could not read {path}: {e}") from e


def write_document(path: str, document: Document) -> None:
    with open(path, "w") as file:
        file.write(dumps(document))
