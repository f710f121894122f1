from typing import Callable, Dict, List, NamedTuple, Optional, TextIO
from argparse import ArgumentParser, Namespace
import logging
import sys

from attr import dataclass
import attr

from ..config import Config
from ..document import Document, ModelCache, dumps

HelpSection = NamedTuple("HelpSection", name=str, order=int, description=str)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2

ArgumentAdder = Callable[[ArgumentParser], None]


@dataclass
class CommandEvent:
    """Everything a command handler gets to work with for one invocation."""

    command: str
    args: Namespace
    config: Config
    stdout: TextIO = attr.ib(factory=lambda: sys.stdout)
    stderr: TextIO = attr.ib(factory=lambda: sys.stderr)
    log: logging.Logger = attr.ib(factory=lambda: logging.getLogger("umod.commands"))

    def reply(self, text: str) -> None:
        print(text, file=self.stdout)

    def notice(self, text: str) -> None:
        print(text, file=self.stderr)

    def option(self, name: str, key: str):
        """A command-line flag, falling back to the config value at ``key``."""
        value = getattr(self.args, name, None)
        return value if value is not None else self.config[key]

    @property
    def cache(self) -> ModelCache:
        return ModelCache(
            self.config["cache.directory"],
            enabled=self.config["cache.enabled"] and not getattr(self.args, "no_cache", False),
            max_layer=self.option("max_layer", "universal.max_layer"),
            max_elements=self.option("max_elements", "universal.max_elements"),
        )

    def write(self, text: str) -> Optional[str]:
        """Write ``text`` to ``--out`` if it was given, to stdout otherwise."""
        out = getattr(self.args, "out", None)
        if out:
            with open(out, "w") as file:
                file.write(text)
            return out
        self.stdout.write(text)
        return None

    def write_document(self, document: Document) -> Optional[str]:
        return self.write(dumps(document))


CommandFunc = Callable[[CommandEvent], int]


@dataclass
class CommandHandler:
    name: str
    func: CommandFunc
    help_section: HelpSection
    help_text: str
    help_args: str = ""
    arguments: Optional[ArgumentAdder] = None

    def add_to(self, subparsers) -> ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.help_text, description=self.help_text)
        if self.arguments is not None:
            self.arguments(parser)
        parser.set_defaults(handler=self)
        return parser

    def __call__(self, evt: CommandEvent) -> int:
        return self.func(evt)


command_handlers: Dict[str, CommandHandler] = {}


def command_handler(
    _func: Optional[CommandFunc] = None,
    *,
    name: Optional[str] = None,
    help_section: HelpSection,
    help_text: str,
    help_args: str = "",
    arguments: Optional[ArgumentAdder] = None,
) -> Callable[[CommandFunc], CommandHandler]:
    def decorator(func: CommandFunc) -> CommandHandler:
        handler = CommandHandler(
            name=name or func.__name__.replace("_", "-"),
            func=func,
            help_section=help_section,
            help_text=help_text,
            help_args=help_args,
            arguments=arguments,
        )
        command_handlers[handler.name] = handler
        return handler

    return decorator if _func is None else decorator(_func)


def sorted_handlers() -> List[CommandHandler]:
    return sorted(
        command_handlers.values(),
        key=lambda handler: (handler.help_section.order, handler.help_section.name, handler.name),
    )
