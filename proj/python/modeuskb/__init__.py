"""Knowledge-base engine for OWL 2 functional-style archival ontologies.

Loads TBox/ABox files, materializes the deductive closure under a fixed
Horn rule set, reports clashes and completeness lints, and answers the
SPARQL subset used by the bundled cadastral corpus.
"""

from ._core import (
    CorpusError,
    Engine,
    KbBuildError,
    NotEntailed,
    OfsParseError,
    parse_ontology,
    serialize_ontology,
)

__all__ = [
    "CorpusError",
    "Engine",
    "KbBuildError",
    "NotEntailed",
    "OfsParseError",
    "parse_ontology",
    "serialize_ontology",
]
