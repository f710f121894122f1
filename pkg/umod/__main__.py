from typing import List, Optional, TextIO
import argparse
import copy
import logging
import logging.config
import sys

from .commands import EXIT_ERROR, CommandEvent, sorted_handlers
from .config import Config
from .errors import UmodError
from .version import version


class UmodProgram:
    name = "umod"
    command = "python -m umod"
    description = "Universal models and free nuclear implicative semilattices."
    version = version
    config_class = Config

    log: logging.Logger = logging.getLogger("umod")

    config: Config
    args: argparse.Namespace
    parser: argparse.ArgumentParser

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> None:
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def prepare_arg_parser(self) -> None:
        self.parser = argparse.ArgumentParser(prog=self.command, description=self.description)
        self.parser.add_argument(
            "-c",
            "--config",
            type=str,
            default="config.yaml",
            metavar="<path>",
            help="the path to your config file",
        )
        self.parser.add_argument(
            "-v", "--verbose", action="store_true", help="log debug messages from umod"
        )
        self.parser.add_argument(
            "--version", action="version", version=f"{self.name} {self.version}"
        )
        subparsers = self.parser.add_subparsers(dest="command", metavar="<command>")
        subparsers.required = True
        for handler in sorted_handlers():
            handler.add_to(subparsers)

    def prepare_config(self) -> None:
        self.config = self.config_class(self.args.config)
        self.config.load_or_base()

    def prepare_log(self) -> None:
        logging.config.dictConfig(copy.deepcopy(self.config["logging"]))
        if self.args.verbose:
            logging.getLogger("umod").setLevel(logging.DEBUG)

    def run(self, argv: Optional[List[str]] = None) -> int:
        self.prepare_arg_parser()
        try:
            self.args = self.parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else EXIT_ERROR
        try:
            self.prepare_config()
            self.prepare_log()
        except Exception as e:
            print(f"error: failed to load config: {e}", file=self.stderr)
            return EXIT_ERROR
        evt = CommandEvent(
            command=self.args.command,
            args=self.args,
            config=self.config,
            stdout=self.stdout,
            stderr=self.stderr,
        )
        try:
            return self.args.handler(evt)
        except UmodError as e:
            print(f"error: {e}", file=self.stderr)
            return EXIT_ERROR
        except OSError as e:
            print(f"error: {e}", file=self.stderr)
            return EXIT_ERROR
        except Exception:
            self.log.exception(f"Unhandled error in {self.args.command}")
            print(f"error: unexpected failure in {self.args.command}", file=self.stderr)
            return EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    return UmodProgram().run(argv)


if __name__ == "__main__":
    sys.exit(main())
