"""Tokenizing, normalizing and counting words; choosing the analysis vocabulary."""

from __future__ import annotations

import re
import warnings
from bisect import bisect_left
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from coword._parallel import pmap
from coword.errors import CowordWarning

_ALPHA_RUN = re.compile(r"[^\W\d_]+")


def tokenize(text: str) -> list[str]:
    """Maximal runs of letters; digits, hyphens and punctuation all separate tokens."""
    return _ALPHA_RUN.findall(text)


def normalize(token: str) -> str:
    """Lowercase and drop one plural ``s``.

    The ``s`` goes only when the word has at least four letters and the
    letter before it is not itself an ``s`` ("cells" -> "cell", "boss" and
    "gas" unchanged). This is plain character stripping, not lemmatization:
    "butterflies" becomes "butterflie". The double-s guard makes the
    function idempotent.
    """
    word = token.lower()
    if len(word) >= 4 and word[-1] == "s" and word[-2] != "s":
        return word[:-1]
    return word


@dataclass(frozen=True)
class StopWordList:
    entries: frozenset
    origin: str = "bundled-uspto"

    def __contains__(self, word):
        return word in self.entries

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_lines(cls, lines, origin="user-file"):
        words = set()
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            for token in tokenize(line):
                words.add(normalize(token))
        return cls(frozenset(words), origin)

    @classmethod
    def from_file(cls, path):
        return cls.from_lines(Path(path).read_text(encoding="utf-8").splitlines(), "user-file")

    @classmethod
    def bundled(cls):
        text = resources.files("coword").joinpath("data/uspto_stopwords.txt").read_text(encoding="utf-8")
        return cls.from_lines(text.splitlines(), "bundled-uspto")


def filter_stopwords(words, stoplist: StopWordList) -> list[str]:
    return [w for w in words if w not in stoplist]


def analyze(text: str, stoplist: StopWordList | None = None) -> list[str]:
    """tokenize -> normalize -> stop-filter, in that order."""
    words = [normalize(t) for t in tokenize(text)]
    if stoplist is not None:
        words = filter_stopwords(words, stoplist)
    return words


@dataclass(frozen=True)
class WordEntry:
    word_id: int
    surface: str
    total_freq: int
    unit_freq: int


@dataclass(frozen=True)
class Vocabulary:
    """Word inventory; ids run 0..V-1 by descending total frequency, ties alphabetical."""

    entries: tuple
    n_tokens: int = 0
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index.update((e.surface, e) for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, surface):
        return surface in self._index

    def __getitem__(self, surface) -> WordEntry:
        return self._index[surface]

    @classmethod
    def from_counts(cls, total: dict, units: dict):
        order = sorted(total, key=lambda w: (-total[w], w))
        entries = tuple(WordEntry(i, w, total[w], units[w]) for i, w in enumerate(order))
        return cls(entries, sum(total.values()))


def build_vocabulary(units, stoplist: StopWordList | None = None, workers: int = 1) -> Vocabulary:
    """Count every post-filter word over all units.

    Counting runs per unit (optionally across threads); the merge is
    order-independent so the result does not depend on ``workers``.
    """
    if stoplist is None:
        stoplist = StopWordList.bundled()
    per_unit = pmap(lambda u: Counter(analyze(u.text, stoplist)), units, workers)
    total, unit_freq = Counter(), Counter()
    for counts in per_unit:
        total.update(counts)
        unit_freq.update(counts.keys())
    if not total:
        warnings.warn("no words left after stop-word filtering; empty vocabulary", CowordWarning, stacklevel=2)
    return Vocabulary.from_counts(total, unit_freq)


@dataclass(frozen=True)
class WordSelection:
    """Words entering the analysis.

    ``min_freq`` is the effective occurrence threshold actually applied; it
    is at least ``requested_min_freq`` and is raised as far as needed to stay
    under ``max_words``. ``truncated`` marks the fallback where even the most
    frequent tier exceeds the cap and was cut alphabetically.
    """

    min_freq: int
    max_words: int
    selected: tuple
    requested_min_freq: int
    truncated: bool = False

    def __len__(self):
        return len(self.selected)

    def __iter__(self):
        return iter(self.selected)

    @property
    def surfaces(self):
        return [e.surface for e in self.selected]

    @property
    def floor_freq(self):
        """Lowest total frequency among the selected words (0 when empty)."""
        return min((e.total_freq for e in self.selected), default=0)


def select_words(vocab: Vocabulary, min_freq: int = 2, max_words: int = 100) -> WordSelection:
    """Pick the lowest frequency threshold that keeps at most ``max_words`` words.

    The threshold is the smallest integer ``t >= min_freq`` with
    ``|{w : freq(w) >= t}| <= max_words``, so lowering it by one would
    overflow the cap (unless ``t == min_freq``).
    """
    if min_freq < 1 or max_words < 1:
        raise ValueError("min_freq and max_words must be >= 1")
    ascending = sorted(e.total_freq for e in vocab)

    def n_at_least(t):
        return len(ascending) - bisect_left(ascending, t)

    if not ascending or ascending[-1] < min_freq:
        warnings.warn(f"no word occurs {min_freq} or more times; empty selection", CowordWarning, stacklevel=2)
        return WordSelection(min_freq, max_words, (), min_freq)

    top = ascending[-1]
    if n_at_least(top) > max_words:
        tier = sorted((e for e in vocab if e.total_freq == top), key=lambda e: e.surface)[:max_words]
        warnings.warn(
            f"{n_at_least(top)} words share the top frequency {top}; keeping the "
            f"alphabetically first {max_words}",
            CowordWarning,
            stacklevel=2,
        )
        chosen = tuple(sorted(tier, key=lambda e: e.word_id))
        return WordSelection(top, max_words, chosen, min_freq, truncated=True)

    # the count only drops just above an occurring frequency, so t is either
    # min_freq or some occurring frequency + 1
    candidates = sorted({min_freq} | {f + 1 for f in ascending if f + 1 > min_freq})
    t = next(c for c in candidates if n_at_least(c) <= max_words)
    chosen = tuple(e for e in vocab if e.total_freq >= t)
    return WordSelection(t, max_words, chosen, min_freq)
