"""Walk through the co-word pipeline one stage at a time on the bundled corpus."""

import numpy as np

from coword import (
    StopWordList,
    build_graph,
    build_occurrence_matrix,
    build_vocabulary,
    components,
    cooccurrence,
    cosine_similarity,
    load_corpus,
    prune_isolated,
    read_units,
    select_words,
)
from coword.pipeline import fixture_manifest

# %% documents -> paragraphs
docs = load_corpus(fixture_manifest())
units, empty = read_units(docs, "paragraph")
print(len(docs), "documents,", len(units), "paragraphs")
print("first unit:", units[0].unit_id, repr(units[0].text[:60]))

# %% words that survive the stop list and occur at least twice
vocab = build_vocabulary(units, StopWordList.bundled())
selection = select_words(vocab, min_freq=2, max_words=100)
print("vocabulary:", len(vocab), "selected:", len(selection), "threshold:", selection.min_freq)
print(selection.surfaces)

# %% the asymmetric paragraphs x words matrix, and its transposed product
occ = build_occurrence_matrix(units, selection)
print("occurrence matrix", occ.shape)
cooc = cooccurrence(occ)
print("monarch/pollen co-occur in", cooc[occ.labels.index("monarch"), occ.labels.index("pollen")], "paragraphs")

# %% cosine normalization
sim = cosine_similarity(occ)
np.set_printoptions(precision=2, suppress=True, linewidth=140)
print(sim.values[:6, :6])

# %% two thresholds give two maps
for t in (0.1, 0.5):
    g = prune_isolated(build_graph(sim, occ.cols, t))
    comps = components(g)
    names = {n.word_id: n.surface for n in g.nodes}
    print(f"cosine >= {t}: {g.n_nodes} words, {g.n_edges} links, {len(comps)} groups")
    for c in comps:
        print("   ", sorted(names[w] for w in c))
    if g.pruned:
        print("    dropped as unconnected:", list(g.pruned))
