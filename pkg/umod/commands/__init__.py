from .duality import SECTION_DUALITY
from .handler import (
    EXIT_ERROR,
    EXIT_INVALID,
    EXIT_OK,
    CommandEvent,
    CommandHandler,
    HelpSection,
    command_handler,
    command_handlers,
    sorted_handlers,
)
from .logic import SECTION_LOGIC
from .meta import SECTION_MISC
from .models import SECTION_MODELS
