from typing import Optional
from argparse import ArgumentParser

from ..coloring import Variety, irreducibility_failure
from ..decision import free_algebra
from ..document import AlgebraDocument, ModelDocument, read_document, to_dot
from ..errors import DocumentError
from ..universal import embed_irreducible, model_height_bound, verify_embedding
from .handler import EXIT_INVALID, EXIT_OK, CommandEvent, HelpSection, command_handler

SECTION_MODELS = HelpSection("Models", 10, "Universal models and free algebras")

VARIETIES = [variety.value for variety in Variety]


def add_variety(parser: ArgumentParser, default: Optional[Variety] = Variety.NIS) -> None:
    parser.add_argument(
        "--variety",
        type=Variety,
        default=default,
        choices=list(Variety),
        metavar="VARIETY",
        help=f"one of {', '.join(VARIETIES)}",
    )


def add_limits(parser: ArgumentParser) -> None:
    parser.add_argument("--max-layer", type=int, help="stop after this many layers")
    parser.add_argument("--max-elements", type=int, help="element budget for the build")
    parser.add_argument("--no-cache", action="store_true", help="ignore the model cache")


def add_output(parser: ArgumentParser) -> None:
    parser.add_argument("--format", choices=["json", "dot"], default="json")
    parser.add_argument("--out", help="write here instead of stdout")


def load_model_document(path: str) -> ModelDocument:
    document = read_document(path)
    if not isinstance(document, ModelDocument):
        raise DocumentError(f"{path} holds a {document.kind} document, not a model")
    return document


def _build_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="number of generators")
    add_variety(parser)
    add_limits(parser)
    add_output(parser)


@command_handler(
    help_section=SECTION_MODELS,
    help_args="--n <n> [--variety <variety>]",
    help_text="Build the n-universal model of a variety.",
    arguments=_build_arguments,
)
def build(evt: CommandEvent) -> int:
    layered = evt.cache.get(evt.args.n, evt.args.variety)
    document = ModelDocument.from_layered(layered)
    for number, size in enumerate(layered.layer_sizes(), start=1):
        evt.notice(f"layer {number}: {size} elements")
    if layered.is_truncated:
        evt.notice(
            f"truncated ({layered.truncation.reason}), height at least "
            f"{model_height_bound(layered)}"
        )
    else:
        evt.notice(f"height {model_height_bound(layered)}")
    if evt.args.format == "dot":
        evt.write(to_dot(document, f"{evt.args.variety.value}-{evt.args.n}"))
    else:
        evt.write_document(document)
    return EXIT_OK


@command_handler(
    help_section=SECTION_MODELS,
    help_args="--n <n> [--variety <variety>]",
    help_text="Build the free n-generated algebra as the upsets of the universal model.",
    arguments=_build_arguments,
)
def free(evt: CommandEvent) -> int:
    result = free_algebra(
        evt.args.n,
        evt.args.variety,
        limit=evt.config["algebra.max_upset_carrier"],
        loader=evt.cache,
    )
    document = AlgebraDocument.from_algebra(result.algebra)
    document.generators = list(result.generators)
    document.n_vars = result.n
    document.variant = result.variety.value
    evt.notice(
        f"free {result.variety.value} algebra on {result.n} generators: {result.size} elements"
    )
    if evt.args.format == "dot":
        evt.write(to_dot(document, f"free-{evt.args.variety.value}-{evt.args.n}"))
    else:
        evt.write_document(document)
    return EXIT_OK


def _model_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("path", help="model document")
    parser.add_argument("--n", type=int, help="number of generators (default: from the document)")
    add_variety(parser, default=None)


def _model_variety(evt: CommandEvent, document: ModelDocument) -> Variety:
    if evt.args.variety is not None:
        return evt.args.variety
    elif document.variant is not None:
        try:
            return Variety(document.variant)
        except ValueError as e:
            raise DocumentError(f"Unknown variant {document.variant!r}") from e
    return Variety.NIS


def _check_arguments(parser: ArgumentParser) -> None:
    _model_arguments(parser)
    parser.add_argument(
        "--irreducible", action="store_true", help="also test the Coloring Theorem conditions"
    )


@command_handler(
    help_section=SECTION_MODELS,
    help_args="<path> [--irreducible] [--n <n>] [--variety <variety>]",
    help_text="Validate a model document and optionally test irreducibility.",
    arguments=_check_arguments,
)
def check(evt: CommandEvent) -> int:
    document = load_model_document(evt.args.path)
    model = document.to_model(evt.args.n)
    variety = _model_variety(evt, document)
    variety.check_sposet(model.sposet)
    evt.reply(
        f"elements: {model.poset.size}, in S: {len(model.sposet.s_set)}, "
        f"height: {model.poset.height()}, variables: {model.n}"
    )
    if not evt.args.irreducible:
        return EXIT_OK
    failure = irreducibility_failure(model, variety)
    if failure is None:
        evt.reply("irreducible: true")
        return EXIT_OK
    evt.reply(f"irreducible: false, condition {failure}")
    return EXIT_INVALID


def _embed_arguments(parser: ArgumentParser) -> None:
    _model_arguments(parser)
    add_limits(parser)


@command_handler(
    help_section=SECTION_MODELS,
    help_args="<path> [--n <n>] [--variety <variety>]",
    help_text="Embed an irreducible model into the universal model and print the map.",
    arguments=_embed_arguments,
)
def embed(evt: CommandEvent) -> int:
    document = load_model_document(evt.args.path)
    model = document.to_model(evt.args.n)
    layered = evt.cache.get(model.n, _model_variety(evt, document))
    image = embed_irreducible(model, layered)
    target = layered.poset
    for x, y in enumerate(image):
        evt.reply(f"{model.poset.label(x)} -> {target.label(y)}")
    if not verify_embedding(model, layered, image):
        evt.notice("embedding check failed")
        return EXIT_INVALID
    return EXIT_OK


def _export_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("path", help="model or algebra document")
    parser.add_argument("--format", choices=["dot"], default="dot")
    parser.add_argument("--out", help="write here instead of stdout")
    parser.add_argument("--name", help="graph name")


@command_handler(
    help_section=SECTION_MODELS,
    help_args="<path> [--format dot]",
    help_text="Render a model or algebra document as a Graphviz digraph.",
    arguments=_export_arguments,
)
def export(evt: CommandEvent) -> int:
    evt.write(to_dot(read_document(evt.args.path), evt.args.name))
    return EXIT_OK
