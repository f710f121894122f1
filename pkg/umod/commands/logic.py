from argparse import ArgumentParser

from ..coloring import Variety
from ..decision import Verdict, decide, refute, tautology_battery
from ..document import ModelDocument, dumps
from ..errors import TruncatedModelError
from ..terms import Term, parse_term
from .handler import (
    EXIT_ERROR,
    EXIT_INVALID,
    EXIT_OK,
    CommandEvent,
    HelpSection,
    command_handler,
)
from .models import add_limits, add_variety

SECTION_LOGIC = HelpSection("Logic", 20, "Deciding equations of the variety")


def report(evt: CommandEvent, verdict: Verdict) -> int:
    if verdict.valid is None:
        evt.reply("UNKNOWN")
        return EXIT_ERROR
    elif verdict.valid:
        evt.reply("VALID")
        return EXIT_OK
    evt.reply("INVALID")
    countermodel = ModelDocument.from_model(verdict.countermodel.model, verdict.variety)
    path = evt.write(dumps(countermodel))
    if path:
        evt.reply(f"countermodel: {path}")
    return EXIT_INVALID


def _decide_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("term", nargs="?", help='e.g. "j(x1) -> x1"')
    parser.add_argument(
        "--battery", action="store_true", help="decide the built-in list of valid equations"
    )
    parser.add_argument(
        "--max-size", type=int, help="largest S-poset to search when a model is cut off"
    )
    parser.add_argument("--out", help="write the countermodel here")
    add_variety(parser)
    add_limits(parser)


def _decide_or_refute(evt: CommandEvent, term: Term, variety: Variety) -> Verdict:
    try:
        return decide(term, variety, loader=evt.cache)
    except TruncatedModelError as e:
        max_size = evt.option("max_size", "refute.max_size")
        evt.notice(f"warning: {e}; searching S-posets up to {max_size} points instead")
        return refute(term, variety, max_size)


@command_handler(
    name="decide",
    help_section=SECTION_LOGIC,
    help_args="<term> [--variety <variety>] | --battery",
    help_text="Decide whether term = 1 holds, by evaluation in the free algebra.",
    arguments=_decide_arguments,
)
def decide_term(evt: CommandEvent) -> int:
    variety = evt.args.variety
    if evt.args.battery:
        invalid = unknown = False
        for text, term in tautology_battery(variety):
            verdict = _decide_or_refute(evt, term, variety)
            if verdict.valid is None:
                unknown = True
                evt.reply(f"UNKNOWN {text}")
            elif verdict.valid:
                evt.reply(f"VALID {text}")
            else:
                invalid = True
                evt.reply(f"INVALID {text}")
        if invalid:
            return EXIT_INVALID
        return EXIT_ERROR if unknown else EXIT_OK
    if evt.args.term is None:
        evt.notice("error: give a term or --battery")
        return EXIT_ERROR
    term = parse_term(evt.args.term, variety.bounded)
    return report(evt, _decide_or_refute(evt, term, variety))


def _refute_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("term", help='e.g. "j(0)"')
    parser.add_argument("--max-size", type=int, help="largest S-poset to search")
    parser.add_argument("--out", help="write the countermodel here")
    add_variety(parser)


@command_handler(
    name="refute",
    help_section=SECTION_LOGIC,
    help_args="<term> [--variety <variety>] [--max-size <k>]",
    help_text="Search the small S-posets for a countermodel to term = 1.",
    arguments=_refute_arguments,
)
def refute_term(evt: CommandEvent) -> int:
    variety = evt.args.variety
    term = parse_term(evt.args.term, variety.bounded)
    max_size = evt.option("max_size", "refute.max_size")
    return report(evt, refute(term, variety, max_size))
