import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def fixture_dir():
    from oracles import FIXTURE

    return FIXTURE


@pytest.fixture
def write_manifest(tmp_path):
    """Write documents plus a manifest into tmp_path; returns the manifest path."""

    def make(docs, name="manifest.tsv"):
        lines = []
        for fname, media, label, content in docs:
            p = tmp_path / fname
            if isinstance(content, bytes):
                p.write_bytes(content)
            else:
                p.write_text(content, encoding="utf-8")
            lines.append(f"{fname}\t{media}\t{label}")
        manifest = tmp_path / name
        manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return manifest

    return make


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported by the verdict fixture")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


@pytest.fixture
def verdict(request, capsys):
    """Print one PASS/FAIL line for an acceptance criterion, visible even under capture."""
    label = request.node.get_closest_marker("criterion").args[0]
    state = {"detail": ""}
    yield state
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    detail = f": {state['detail']}" if state["detail"] else ""
    with capsys.disabled():
        print(f"\n[acceptance] {'PASS' if ok else 'FAIL'} {label}{detail}")
