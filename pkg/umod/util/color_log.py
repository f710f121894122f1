from mautrix.util.logging.color import MXID_COLOR, PREFIX, RESET
from mautrix.util.logging.color import ColorFormatter as BaseColorFormatter

UMOD_COLOR = PREFIX + "36;1m"  # cyan
BUILDER_COLOR = PREFIX + "33m"  # yellow


class ColorFormatter(BaseColorFormatter):
    def _color_name(self, module: str) -> str:
        if module.startswith("umod.universal") or module.startswith("umod.cache"):
            return BUILDER_COLOR + module + RESET
        elif module.startswith("umod"):
            return UMOD_COLOR + module + RESET
        elif module.startswith("mau"):
            return MXID_COLOR + module + RESET
        return super()._color_name(module)
