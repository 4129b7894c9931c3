"""The committed carrier files must stay in sync with the bundled texts."""

from pathlib import Path

from graphfock.fixtures import GRAPH_TEXTS, KGRAPH_TEXTS
from graphfock.graphs import load_graph
from graphfock.kgraphs import load_kgraph

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def test_files_match_bundled_texts():
    for name, text in GRAPH_TEXTS.items():
        assert (FIXTURE_DIR / f"{name}.g").read_text() == text
    for name, text in KGRAPH_TEXTS.items():
        assert (FIXTURE_DIR / f"{name}.kg").read_text() == text


def test_files_load():
    for name in GRAPH_TEXTS:
        g = load_graph(str(FIXTURE_DIR / f"{name}.g"))
        assert g.name == name
    for name in KGRAPH_TEXTS:
        kg = load_kgraph(str(FIXTURE_DIR / f"{name}.kg"))
        assert kg.name == name
