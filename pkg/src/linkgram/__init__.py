"""Link grammar parsing toolkit."""
from .grammar import (
    And, Connector, ConnectorName, Disjunct, Empty, FatId, Leaf, Optional, Or,
    expand, intersect, match,
)
from .dictionary import (
    Dictionary, DictionaryError, DictSource, load_abridged, lookup_word,
    parse_dictionary,
)

__version__ = "0.1.0"

__all__ = [
    "And", "Connector", "ConnectorName", "Disjunct", "Empty", "FatId", "Leaf",
    "Optional", "Or", "expand", "intersect", "match", "Dictionary",
    "DictionaryError", "DictSource", "load_abridged", "lookup_word",
    "parse_dictionary",
]
