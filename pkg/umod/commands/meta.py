from ..version import version
from .handler import EXIT_OK, CommandEvent, HelpSection, command_handler, sorted_handlers

SECTION_MISC = HelpSection("Miscellaneous", 40, "")


@command_handler(help_section=SECTION_MISC, help_text="Show the commands grouped by section.")
def commands(evt: CommandEvent) -> int:
    section = None
    for handler in sorted_handlers():
        if handler.help_section != section:
            section = handler.help_section
            description = f": {section.description}" if section.description else ""
            evt.reply(f"\n{section.name}{description}")
        evt.reply(f"  {handler.name} {handler.help_args}".rstrip() + f" - {handler.help_text}")
    return EXIT_OK


@command_handler(name="version", help_section=SECTION_MISC, help_text="Show the umod version.")
def show_version(evt: CommandEvent) -> int:
    evt.reply(f"umod {version}")
    return EXIT_OK
