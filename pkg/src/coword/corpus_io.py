"""Loading documents from disk, stripping markup and cutting text into units."""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path

from coword._parallel import pmap
from coword.errors import CorpusError, CowordWarning, EmptyDocumentError

MEDIA = ("html", "plain")
GRANULARITIES = ("document", "paragraph", "sentence", "title")

# Tokens that end in a period without ending a sentence.
ABBREVIATIONS = frozenset(
    {
        "e.g.", "i.e.", "cf.", "vs.", "al.", "approx.", "no.", "fig.", "figs.",
        "Dr.", "Mr.", "Mrs.", "Ms.", "Prof.", "St.", "Jr.", "Sr.", "Inc.", "Co.",
        "Ltd.", "Corp.", "U.S.", "U.K.", "U.N.", "E.U.", "Jan.", "Feb.", "Mar.",
        "Apr.", "Aug.", "Sept.", "Oct.", "Nov.", "Dec.",
    }
)

# html elements whose text is never body text.
SKIP_ELEMENTS = frozenset(
    {
        "head", "script", "style", "noscript", "template", "iframe", "svg",
        "nav", "footer", "aside", "button", "select", "object", "canvas",
    }
)

BLOCK_ELEMENTS = frozenset(
    {
        "address", "article", "blockquote", "body", "caption", "dd", "details",
        "dialog", "div", "dl", "dt", "fieldset", "figcaption", "figure", "form",
        "h1", "h2", "h3", "h4", "h5", "h6", "header", "hgroup", "hr", "html",
        "li", "main", "ol", "p", "pre", "section", "summary", "table", "tbody",
        "td", "tfoot", "th", "thead", "tr", "ul",
    }
)

_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n\s*")
_SENTENCE_END = re.compile(r"[.!?]+[\"')\]]*\s+")
_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class SourceDocument:
    doc_id: str
    path: Path
    media: str
    label: str
    raw: bytes


@dataclass(frozen=True)
class CleanDocument:
    doc_id: str
    title: str
    body: str


@dataclass(frozen=True)
class TextUnit:
    unit_id: str
    doc_id: str
    granularity: str
    ordinal: int
    text: str


def load_corpus(manifest) -> list[SourceDocument]:
    """Read a tab-separated manifest (``path<TAB>media<TAB>label``).

    Relative paths resolve against the manifest's directory. Blank lines and
    lines starting with ``#`` are skipped. Document ids follow record order.
    """
    manifest = Path(manifest)
    try:
        lines = manifest.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read manifest {manifest}: {exc}") from exc

    docs = []
    seen = {}
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) == 2:
            fields.append("")
        if len(fields) != 3:
            raise CorpusError(
                f"{manifest}:{lineno}: expected path<TAB>media<TAB>label, got {len(fields)} fields"
            )
        rel, media, label = (f.strip() for f in fields)
        if media not in MEDIA:
            raise CorpusError(f"{manifest}:{lineno}: unknown media hint {media!r}")
        path = Path(rel)
        if not path.is_absolute():
            path = manifest.parent / path
        key = path.resolve()
        if key in seen:
            raise CorpusError(
                f"{manifest}:{lineno}: duplicate path {rel!r} (first listed on line {seen[key]})"
            )
        seen[key] = lineno
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise CorpusError(f"{manifest}:{lineno}: cannot read {rel!r}: {exc.strerror}") from exc
        if not raw:
            raise CorpusError(f"{manifest}:{lineno}: file {rel!r} is empty")
        docs.append(SourceDocument(f"doc{len(docs):03d}", path, media, label, raw))

    if not docs:
        warnings.warn(f"manifest {manifest} lists no documents", CowordWarning, stacklevel=2)
    return docs


def _decode(doc: SourceDocument) -> str:
    text = doc.raw.decode("utf-8", errors="replace")
    replaced = text.count("�") - doc.raw.count("�".encode("utf-8"))
    if replaced:
        warnings.warn(
            f"{doc.doc_id}: {replaced} undecodable byte sequence(s) replaced",
            CowordWarning,
            stacklevel=3,
        )
    return text.replace("\r\n", "\n").replace("\r", "\n")


class _BodyTextParser(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.title_parts = []
        self.paragraphs = []
        self._current = []
        self._skip = {}
        self._in_title = False
        self._seen_title = False

    def _skipping(self):
        return any(self._skip.values())

    def _flush(self):
        text = _WS.sub(" ", "".join(self._current)).strip()
        if text:
            self.paragraphs.append(text)
        self._current = []

    def handle_starttag(self, tag, attrs):
        if tag == "body":
            # an unclosed head must not swallow the body
            self._skip.pop("head", None)
        if tag == "title" and not self._seen_title:
            self._in_title = True
            return
        if tag in SKIP_ELEMENTS:
            self._skip[tag] = self._skip.get(tag, 0) + 1
        elif tag in BLOCK_ELEMENTS:
            self._flush()
        elif tag == "br":
            self._current.append(" ")

    def handle_startendtag(self, tag, attrs):
        if tag in BLOCK_ELEMENTS:
            self._flush()
        elif tag == "br":
            self._current.append(" ")

    def handle_endtag(self, tag):
        if tag == "title" and self._in_title:
            self._in_title = False
            self._seen_title = True
            return
        if tag in SKIP_ELEMENTS:
            if self._skip.get(tag):
                self._skip[tag] -= 1
        elif tag in BLOCK_ELEMENTS:
            self._flush()

    def handle_data(self, data):
        if self._in_title:
            self.title_parts.append(data)
        elif not self._skipping():
            self._current.append(data)

    def close(self):
        super().close()
        self._flush()


def extract_text(doc: SourceDocument) -> CleanDocument:
    """Reduce a document to its title and body text.

    html: head metadata, scripts, styles and navigation chrome are dropped,
    the ``<title>`` is kept as the title and block elements become paragraphs
    separated by a blank line. plain: the text is passed through and its first
    line doubles as the title.

    Raises EmptyDocumentError when nothing is left of the body.
    """
    text = _decode(doc)
    if doc.media == "html":
        parser = _BodyTextParser()
        parser.feed(text)
        parser.close()
        title = _WS.sub(" ", "".join(parser.title_parts)).strip()
        body = "\n\n".join(parser.paragraphs)
    elif doc.media == "plain":
        body = text.strip()
        title = body.split("\n", 1)[0].strip() if body else ""
    else:
        raise CorpusError(f"{doc.doc_id}: unknown media hint {doc.media!r}")
    if not body.strip():
        raise EmptyDocumentError(doc.doc_id)
    return CleanDocument(doc.doc_id, title, body)


def split_paragraphs(body: str) -> list[str]:
    return [p.strip() for p in _PARAGRAPH_BREAK.split(body) if p.strip()]


def split_sentences(text: str) -> list[str]:
    """Split on ., ! or ? followed by whitespace and a capital letter.

    A terminator is ignored when the word carrying it is a known abbreviation.
    """
    sentences = []
    start = 0
    for match in _SENTENCE_END.finditer(text):
        end = match.end()
        if end >= len(text) or not text[end].isupper():
            continue
        fragment = text[start:match.start() + len(match.group().rstrip())]
        last_word = fragment.rsplit(None, 1)[-1] if fragment.strip() else ""
        if last_word.rstrip("\"')]") in ABBREVIATIONS:
            continue
        sentences.append(fragment.strip())
        start = end
    sentences.append(text[start:].strip())
    return [s for s in sentences if s]


def segment(doc: CleanDocument, granularity: str) -> list[TextUnit]:
    """Cut a document into the textual units that become matrix rows."""
    if granularity not in GRANULARITIES:
        raise ValueError(f"granularity must be one of {GRANULARITIES}, got {granularity!r}")
    if granularity == "document":
        pieces = [doc.body.strip()]
    elif granularity == "paragraph":
        pieces = split_paragraphs(doc.body)
    elif granularity == "sentence":
        pieces = [s for p in split_paragraphs(doc.body) for s in split_sentences(p)]
    else:
        if not doc.title.strip():
            warnings.warn(f"{doc.doc_id}: empty title, no title unit", CowordWarning, stacklevel=2)
        pieces = [doc.title.strip()]
    pieces = [p for p in pieces if p]
    tag = granularity[0]
    return [
        TextUnit(f"{doc.doc_id}:{tag}{i}", doc.doc_id, granularity, i, text)
        for i, text in enumerate(pieces)
    ]


def read_units(docs, granularity, workers=1):
    """Extract and segment every document, keeping manifest order.

    Returns ``(units, empty_doc_ids)``; empty documents are reported, not fatal.
    """

    def work(doc):
        try:
            clean = extract_text(doc)
        except EmptyDocumentError:
            return None
        return segment(clean, granularity)

    units, empty = [], []
    for doc, result in zip(docs, pmap(work, docs, workers)):
        if result is None:
            warnings.warn(f"{doc.doc_id} ({doc.path.name}): empty document", CowordWarning, stacklevel=2)
            empty.append(doc.doc_id)
        else:
            units.extend(result)
    return units, empty
