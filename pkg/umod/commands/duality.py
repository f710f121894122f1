from argparse import ArgumentParser

from ..document import PartitionDocument, SubalgebraReport, SuiteDocument, VerificationReport
from ..partitions import (
    SubalgebraMode,
    all_subalgebras,
    classify_partition,
    enumerate_maximal_subalgebras,
    partition_subalgebra,
)
from ..verify import SUITES, verify_duality
from .handler import EXIT_INVALID, EXIT_OK, CommandEvent, HelpSection, command_handler
from .models import load_model_document

SECTION_DUALITY = HelpSection("Duality", 30, "Subalgebras and the exhaustive duality checks")


def _subalgebras_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("path", help="model document")
    parser.add_argument(
        "--mode",
        type=SubalgebraMode,
        choices=list(SubalgebraMode),
        default=SubalgebraMode.PLAIN,
        metavar="MODE",
        help=f"one of {', '.join(mode.value for mode in SubalgebraMode)}",
    )
    parser.add_argument(
        "--maximal", action="store_true", help="list the maximal subalgebras as partitions"
    )
    parser.add_argument("--out", help="write the JSON report here")


@command_handler(
    help_section=SECTION_DUALITY,
    help_args="<path> [--maximal] [--mode <mode>]",
    help_text="Report the subalgebras of the upset algebra of a model.",
    arguments=_subalgebras_arguments,
)
def subalgebras(evt: CommandEvent) -> int:
    sposet = load_model_document(evt.args.path).to_sposet()
    mode: SubalgebraMode = evt.args.mode
    limit = evt.config["algebra.max_upset_carrier"]
    report = SubalgebraReport(mode=mode.value)
    if evt.args.maximal:
        for partition in enumerate_maximal_subalgebras(sposet, mode):
            kind = classify_partition(partition, sposet)
            report.partitions.append(
                PartitionDocument(
                    domain=sorted(x for members in partition.classes for x in members),
                    classes=[list(members) for members in partition.classes],
                    total=kind.total,
                    strict_heyting=kind.strict_heyting,
                    subalgebra_size=len(partition_subalgebra(partition, limit)),
                    nuclear=kind.nuclear,
                )
            )
        evt.notice(f"{len(report.partitions)} maximal {mode.value} subalgebras")
    else:
        found = all_subalgebras(sposet, mode.signature, limit)
        report.sizes = sorted(len(sub) for sub in found)
        evt.notice(f"{len(found)} {mode.value} subalgebras")
    evt.write_document(report)
    return EXIT_OK


def _verify_arguments(parser: ArgumentParser) -> None:
    parser.add_argument("--max-size", type=int, default=3, help="largest poset checked")
    parser.add_argument(
        "--max-vars", type=int, default=1, help="variables colored in the coloring suite"
    )
    parser.add_argument(
        "--suite", action="append", choices=list(SUITES), help="run only these suites"
    )
    parser.add_argument("--out", help="write the JSON report here")


@command_handler(
    name="verify-duality",
    help_section=SECTION_DUALITY,
    help_args="[--max-size <k>] [--max-vars <n>] [--suite <name>]",
    help_text="Check the duality theorems on every small S-poset.",
    arguments=_verify_arguments,
)
def verify_duality_command(evt: CommandEvent) -> int:
    results = verify_duality(evt.args.max_size, evt.args.suite, evt.args.max_vars)
    report = VerificationReport(max_size=evt.args.max_size)
    for result in results:
        status = "ok" if result.passed else "FAILED"
        evt.notice(f"{result.name}: {result.checked} checks, {status}")
        for failure in result.failures:
            evt.notice(f"  {failure}")
        report.suites.append(SuiteDocument(result.name, result.checked, list(result.failures)))
    if evt.args.out:
        evt.write_document(report)
    return EXIT_OK if all(result.passed for result in results) else EXIT_INVALID
