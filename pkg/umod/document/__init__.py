from .cache import CACHE_ENV, ModelCache
from .data import (
    FORMAT_VERSION,
    AlgebraDocument,
    Document,
    DocumentKind,
    ModelDocument,
    PartitionDocument,
    SubalgebraReport,
    SuiteDocument,
    SymbolDocument,
    TruncationDocument,
    VerificationReport,
    dumps,
    loads,
    read_document,
    write_document,
)
from .dot import algebra_to_dot, model_to_dot, to_dot
