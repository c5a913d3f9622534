import pytest
from hypothesis import given, strategies as st

from coword.corpus_io import (
    CleanDocument,
    SourceDocument,
    extract_text,
    load_corpus,
    read_units,
    segment,
    split_sentences,
)
from coword.errors import CorpusError, CowordWarning, EmptyDocumentError


def html_doc(raw, doc_id="doc000"):
    return SourceDocument(doc_id, None, "html", "", raw.encode())


def test_load_five_documents_in_order(write_manifest):
    docs = [(f"release{i}.txt", "plain", f"src{i}", f"Text {i}") for i in range(5)]
    manifest = write_manifest(docs)
    corpus = load_corpus(manifest)
    assert [d.doc_id for d in corpus] == ["doc000", "doc001", "doc002", "doc003", "doc004"]
    assert [d.label for d in corpus] == [f"src{i}" for i in range(5)]
    assert corpus[3].raw == b"Text 3"


def test_load_empty_manifest_warns(tmp_path):
    manifest = tmp_path / "m.tsv"
    manifest.write_text("# nothing here\n\n")
    with pytest.warns(CowordWarning):
        assert load_corpus(manifest) == []


def test_load_missing_file_names_path_and_line(write_manifest, tmp_path):
    manifest = write_manifest([("a.txt", "plain", "x", "hello")])
    manifest.write_text(manifest.read_text() + "gone.txt\tplain\ty\n")
    with pytest.raises(CorpusError, match=r"2: cannot read 'gone.txt'"):
        load_corpus(manifest)


def test_load_duplicate_path(write_manifest):
    manifest = write_manifest([("a.txt", "plain", "x", "hello")])
    manifest.write_text(manifest.read_text() * 2)
    with pytest.raises(CorpusError, match="duplicate"):
        load_corpus(manifest)


def test_load_bad_media(write_manifest):
    manifest = write_manifest([("a.txt", "pdf", "x", "hello")])
    with pytest.raises(CorpusError, match="media"):
        load_corpus(manifest)


def test_extract_html_example():
    raw = "<html><head><title>T</title><script>x()</script></head><body><p>a</p><p>b</p></body>"
    clean = extract_text(html_doc(raw))
    assert clean.title == "T"
    assert clean.body == "a\n\nb"


def test_extract_html_drops_chrome():
    raw = (
        "<html><head><title>Corn</title><meta name='k' content='zzz'><style>p{}</style></head>"
        "<body><nav>Print this document</nav><div>First <b>bold</b> part</div>"
        "<p>Second &amp; last</p><footer>copyright</footer></body></html>"
    )
    clean = extract_text(html_doc(raw))
    assert clean.body == "First bold part\n\nSecond & last"
    assert "Print" not in clean.body and "copyright" not in clean.body


def test_extract_plain_passthrough():
    clean = extract_text(SourceDocument("d", None, "plain", "", b"Line1\nLine2"))
    assert clean == CleanDocument("d", "Line1", "Line1\nLine2")


def test_extract_script_only_is_empty():
    with pytest.raises(EmptyDocumentError):
        extract_text(html_doc("<html><script>only()</script></html>"))


def test_extract_undecodable_bytes_warns():
    doc = SourceDocument("d", None, "plain", "", b"caf\xe9 au lait")
    with pytest.warns(CowordWarning, match="1 undecodable"):
        clean = extract_text(doc)
    assert clean.body == "caf� au lait"


def test_segment_paragraphs_twelve():
    body = "\n\n".join(f"Paragraph number {k} about pollen." for k in range(12))
    units = segment(CleanDocument("d", "t", body), "paragraph")
    assert len(units) == 12
    assert [u.ordinal for u in units] == list(range(12))
    assert units[4].unit_id == "d:p4"


def test_segment_document_identity():
    units = segment(CleanDocument("d", "t", "single paragraph body"), "document")
    assert len(units) == 1 and units[0].text == "single paragraph body"


def test_segment_sentences_example():
    units = segment(CleanDocument("d", "", "A b. C d."), "sentence")
    assert [u.text for u in units] == ["A b.", "C d."]


def test_sentence_abbreviation_guard():
    text = "Work by Dr. Smith in the U.S. Department grew. Monarchs fed, e.g. Larvae did. End here!"
    assert split_sentences(text) == [
        "Work by Dr. Smith in the U.S. Department grew.",
        "Monarchs fed, e.g. Larvae did.",
        "End here!",
    ]


def test_sentence_needs_capital():
    assert split_sentences("pollen 3.5 grams. and more") == ["pollen 3.5 grams. and more"]


def test_segment_title_and_empty_title():
    assert [u.text for u in segment(CleanDocument("d", "Stem cells", "x"), "title")] == ["Stem cells"]
    with pytest.warns(CowordWarning):
        assert segment(CleanDocument("d", "", "x"), "title") == []


def test_segment_rejects_unknown_granularity():
    with pytest.raises(ValueError):
        segment(CleanDocument("d", "", "x"), "chapter")


paragraph_text = st.text(alphabet=st.sampled_from("abc XYZ.\n\t"), min_size=0, max_size=40)


@given(st.lists(paragraph_text, max_size=6))
def test_paragraphs_rejoin_to_body(paras):
    body = "\n\n".join(paras).strip()
    units = segment(CleanDocument("d", "", body), "paragraph")
    rejoined = "\n\n".join(u.text for u in units)
    squash = lambda s: " ".join(s.split())
    assert squash(rejoined) == squash(body)
    assert [u.ordinal for u in units] == list(range(len(units)))
    assert all(u.text for u in units)


@given(st.text(max_size=80), st.sampled_from(["document", "paragraph", "sentence"]))
def test_segment_deterministic(body, granularity):
    doc = CleanDocument("d", "", body)
    assert segment(doc, granularity) == segment(doc, granularity)


def test_read_units_order_independent_of_workers(fixture_dir):
    docs = load_corpus(fixture_dir / "manifest.tsv")
    one, _ = read_units(docs, "paragraph", workers=1)
    many, _ = read_units(docs, "paragraph", workers=4)
    assert one == many
    doc_ids = {d.doc_id for d in docs}
    assert all(u.doc_id in doc_ids for u in one)


def test_read_units_reports_empty_documents(write_manifest):
    manifest = write_manifest([
        ("a.html", "html", "", "<p>Pollen corn</p>"),
        ("b.html", "html", "", "<script>nothing()</script>"),
    ])
    with pytest.warns(CowordWarning, match="empty document"):
        units, empty = read_units(load_corpus(manifest), "paragraph")
    assert empty == ["doc001"]
    assert [u.text for u in units] == ["Pollen corn"]
