"""Graphviz DOT text for models and algebras.

Edges run from each element to its upper covers and the graph is laid out bottom to top, so
the pictures come out the way Hasse diagrams are usually drawn. Render with e.g.
``dot -Tpng -O model.gv``.
"""
from typing import Dict, List, Optional

from ..errors import DocumentError
from .data import AlgebraDocument, Document, ModelDocument


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _color_text(color: List[int]) -> str:
    return "{" + ",".join(str(i) for i in sorted(color)) + "}"


def _header(name: str) -> List[str]:
    return [f"digraph {_quote(name)} {{", "\trankdir=BT;", "\tnode [shape=box];"]


def _ranks(layers: List[int]) -> List[str]:
    grouped: Dict[int, List[int]] = {}
    for x, layer in enumerate(layers):
        grouped.setdefault(layer, []).append(x)
    lines = []
    for layer in sorted(grouped):
        members = " ".join(f"n{x};" for x in grouped[layer])
        lines.append(f"\t{{ rank=same; {members} }}")
    return lines


def model_to_dot(document: ModelDocument, name: str = "model") -> str:
    """S-elements get a double border, labels read ``name | color``."""
    lines = _header(name)
    s = set(document.s)
    for x in range(document.n_elements):
        label = document.names[x] if document.names is not None else str(x)
        if document.colors is not None:
            label = f"{label} | {_color_text(document.colors[x])}"
        extra = ", peripheries=2" if x in s else ""
        lines.append(f"\tn{x} [label={_quote(label)}{extra}];")
    if document.layers is not None:
        lines += _ranks(document.layers)
    for lower, upper in sorted(tuple(pair) for pair in document.covers):
        lines.append(f"\tn{lower} -> n{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def algebra_to_dot(document: AlgebraDocument, name: str = "algebra") -> str:
    """Hasse diagram of an algebra; fixpoints of the nucleus get a double border."""
    lines = _header(name)
    fixed = (
        {a for a in range(document.size) if document.nucleus[a] == a}
        if document.nucleus is not None
        else set()
    )
    generators: Dict[int, List[int]] = {}
    for i, g in enumerate(document.generators or [], start=1):
        generators.setdefault(g, []).append(i)
    for a in range(document.size):
        label = document.labels[a] if document.labels is not None else str(a)
        if a in generators:
            label += " = " + ", ".join(f"g{i}" for i in generators[a])
        extra = ", peripheries=2" if a in fixed else ""
        lines.append(f"\tn{a} [label={_quote(label)}{extra}];")
    for lower, upper in sorted(tuple(pair) for pair in document.hasse):
        lines.append(f"\tn{lower} -> n{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_dot(document: Document, name: Optional[str] = None) -> str:
    if isinstance(document, AlgebraDocument):
        return algebra_to_dot(document, name or "algebra")
    elif isinstance(document, ModelDocument):
        return model_to_dot(document, name or "model")
    raise DocumentError(f"Cannot draw a {document.kind} document")
