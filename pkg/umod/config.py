from typing import Optional
import logging
import os

from mautrix.util.config import BaseFileConfig, ConfigUpdateHelper

BASE_CONFIG_PATH = "pkg://umod/example-config.yaml"


class Config(BaseFileConfig):
    log: logging.Logger = logging.getLogger("umod.config")

    def __init__(self, path: str, base_path: str = BASE_CONFIG_PATH) -> None:
        super().__init__(path, base_path)

    def do_update(self, helper: ConfigUpdateHelper) -> None:
        copy, copy_dict, base = helper

        copy("universal.max_layer")
        copy("universal.max_elements")

        copy("algebra.max_upset_carrier")

        copy("refute.max_size")

        copy("cache.enabled")
        copy("cache.directory")

        copy_dict("logging")

    def load_or_base(self) -> None:
        """Read the config file, falling back to the bundled defaults if there is none."""
        if self.path and os.path.exists(self.path):
            self.load()
        else:
            self.log.debug(f"No config at {self.path}, using the defaults")
        self.update(save=False)

    @classmethod
    def from_path(cls, path: Optional[str]) -> "Config":
        config = cls(path or "")
        config.load_or_base()
        return config
