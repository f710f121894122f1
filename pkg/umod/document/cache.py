from typing import Optional
import logging
import os
import tempfile

from ..coloring import Variety
from ..errors import DocumentError
from ..universal import (
    DEFAULT_MAX_ELEMENTS,
    DEFAULT_MAX_LAYER,
    LayeredModel,
    build_universal_model,
)
from .data import FORMAT_VERSION, ModelDocument, dumps, read_document

CACHE_ENV = "UMOD_CACHE"


class ModelCache:
    """Universal models on disk, one JSON document per variety, ``n`` and build limits.

    A cache is callable with ``(n, variety)`` so it can be handed to the decision procedure
    as its model loader.
    """

    log: logging.Logger = logging.getLogger("umod.cache")

    directory: str
    enabled: bool
    max_layer: Optional[int]
    max_elements: Optional[int]

    def __init__(
        self,
        directory: str,
        enabled: bool = True,
        max_layer: Optional[int] = DEFAULT_MAX_LAYER,
        max_elements: Optional[int] = DEFAULT_MAX_ELEMENTS,
    ) -> None:
        self.directory = os.path.expanduser(os.environ.get(CACHE_ENV) or directory)
        self.enabled = enabled
        self.max_layer = max_layer
        self.max_elements = max_elements

    def path_for(self, n: int, variety: Variety) -> str:
        layer = self.max_layer if self.max_layer is not None else "none"
        elements = self.max_elements if self.max_elements is not None else "none"
        name = f"{variety.value}-n{n}-layer{layer}-elements{elements}-v{FORMAT_VERSION}.json"
        return os.path.join(self.directory, name)

    def load(self, n: int, variety: Variety) -> Optional[LayeredModel]:
        path = self.path_for(n, variety)
        if not os.path.exists(path):
            self.log.debug(f"Cache miss for {path}")
            return None
        try:
            document = read_document(path)
            if not isinstance(document, ModelDocument):
                raise DocumentError(f"Expected a model document, got {document.kind}")
            layered = document.to_layered()
        except DocumentError as e:
            self.log.warning(f"Ignoring unreadable cache entry {path}: {e}")
            return None
        self.log.debug(f"Cache hit for {path}")
        return layered

    def store(self, layered: LayeredModel) -> str:
        path = self.path_for(layered.n, layered.variety)
        os.makedirs(self.directory, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as file:
                file.write(dumps(ModelDocument.from_layered(layered)))
            os.replace(tmp_path, path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
        self.log.debug(f"Wrote {len(layered.elements)} elements to {path}")
        return path

    def get(self, n: int, variety: Variety) -> LayeredModel:
        if self.enabled:
            cached = self.load(n, variety)
            if cached is not None:
                return cached
        layered = build_universal_model(n, variety, self.max_layer, self.max_elements)
        if self.enabled:
            self.store(layered)
        return layered

    __call__ = get
