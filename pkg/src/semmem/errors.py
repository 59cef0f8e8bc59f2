"""Exception hierarchy shared across the engine.

Every domain failure raises a subclass of SemmemError so callers (CLI,
HTTP service) can map them to exit codes / status codes uniformly.
"""


class SemmemError(Exception):
    """Base class for all domain errors."""

    code = "domain_error"


class IngestError(SemmemError):
    """Malformed input file; message carries file path and line number."""

    code = "ingest_error"


class NotFound(SemmemError):
    """A concept, feature, or session id that does not exist."""

    code = "not_found"


class AlreadyKnown(SemmemError):
    """Spelling suggestion requested for a surface already in the lexicon."""

    code = "already_known"


class DegenerateLabels(SemmemError):
    """Feature ranking needs at least two distinct document labels."""

    code = "degenerate_labels"


class EmptyDocument(SemmemError):
    """Document vector requested for a document with no features."""

    code = "empty_document"


class EmptyReferenceCorpus(SemmemError):
    """Synset counting needs a non-empty reference corpus."""

    code = "empty_reference_corpus"


class Exhausted(SemmemError):
    """All candidate questions were excluded."""

    code = "exhausted"


class CorruptLog(SemmemError):
    """Session log file empty or unreadable."""

    code = "corrupt_log"


class ConvergenceError(SemmemError):
    """An iterative numeric routine failed to converge."""

    code = "convergence_error"
