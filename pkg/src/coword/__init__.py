"""Co-word semantic maps.

Turns a set of text documents into a positioned network of words:
documents are segmented into textual units, words are normalized and
counted, an asymmetric unit x word matrix is built, word columns are
compared with the cosine, the similarity matrix is thresholded into a
graph and the graph is embedded in the plane with a Kamada-Kawai spring
model.
"""

__version__ = "0.1.0"

from coword.errors import CowordError, CowordWarning  # noqa: E402
from coword.corpus_io import (  # noqa: E402
    CleanDocument,
    SourceDocument,
    TextUnit,
    extract_text,
    load_corpus,
    read_units,
    segment,
)
from coword.lexicon import (  # noqa: E402
    StopWordList,
    Vocabulary,
    WordSelection,
    build_vocabulary,
    filter_stopwords,
    normalize,
    select_words,
    tokenize,
)
from coword.vsm import (  # noqa: E402
    OccurrenceMatrix,
    SimilarityMatrix,
    build_occurrence_matrix,
    cooccurrence,
    cosine_similarity,
    pearson_similarity,
)
from coword.semgraph import (  # noqa: E402
    Node,
    SemanticGraph,
    build_graph,
    components,
    default_threshold,
    prune_isolated,
)
from coword.layout import (  # noqa: E402
    Embedding,
    LayoutConfig,
    graph_distances,
    kk_energy,
    kk_layout,
)
from coword.factors import FactorModel, correlation_matrix, factor_analysis  # noqa: E402

__all__ = [
    "CowordError",
    "CowordWarning",
    "SourceDocument",
    "CleanDocument",
    "TextUnit",
    "load_corpus",
    "extract_text",
    "segment",
    "read_units",
    "StopWordList",
    "Vocabulary",
    "WordSelection",
    "tokenize",
    "normalize",
    "filter_stopwords",
    "build_vocabulary",
    "select_words",
    "OccurrenceMatrix",
    "SimilarityMatrix",
    "build_occurrence_matrix",
    "cooccurrence",
    "cosine_similarity",
    "pearson_similarity",
    "Node",
    "SemanticGraph",
    "default_threshold",
    "build_graph",
    "prune_isolated",
    "components",
    "LayoutConfig",
    "Embedding",
    "graph_distances",
    "kk_energy",
    "kk_layout",
    "FactorModel",
    "correlation_matrix",
    "factor_analysis",
]
