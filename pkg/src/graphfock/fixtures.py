"""Built-in carriers used by the test and acceptance suites.

The text blocks are the single source of truth; the loaders parse them
with the ordinary file-format machinery, and ``write_fixture_files``
materializes them for CLI use.
"""

from __future__ import annotations

from pathlib import Path

from .graphs import DirectedGraph, parse_graph_text, validate_graph
from .kgraphs import KGraph, parse_kgraph_text, validate_kgraph

GRAPH_TEXTS: dict[str, str] = {
    "loop1": """\
# one vertex, one loop
graph
vertices: v
edge e : v -> v
""",
    "cuntz2": """\
# one vertex, two loops
graph
vertices: v
edge e1 : v -> v
edge e2 : v -> v
""",
    "flag": """\
# an arrow into a loop; x is a source
graph
vertices: x y
edge a : x -> y
edge f : y -> y
""",
    "arrow": """\
# a single arrow; x is a source
graph
vertices: x y
edge a : x -> y
""",
}

KGRAPH_TEXTS: dict[str, str] = {
    "torus2": """\
# one vertex, one loop per color; b-then-r is paired with r-then-b
kgraph
colors = 2
vertices: v
edge b : v -> v color 1
edge r : v -> v color 2
square r.b = r.b
""",
    "sq22": """\
# one vertex, two loops per color, commuting pairwise
kgraph
colors = 2
vertices: v
edge b1 : v -> v color 1
edge b2 : v -> v color 1
edge r1 : v -> v color 2
edge r2 : v -> v color 2
square b1.r1 = b1.r1
square b1.r2 = b1.r2
square b2.r1 = b2.r1
square b2.r2 = b2.r2
""",
    "loop1k": """\
# the single loop, viewed with one color
kgraph
colors = 1
vertices: v
edge e : v -> v color 1
""",
}


def fixture_graph(name: str) -> DirectedGraph:
    return validate_graph(parse_graph_text(GRAPH_TEXTS[name], name))


def fixture_kgraph(name: str) -> KGraph:
    return validate_kgraph(parse_kgraph_text(KGRAPH_TEXTS[name], name))


def fixture_names() -> tuple[list[str], list[str]]:
    return sorted(GRAPH_TEXTS), sorted(KGRAPH_TEXTS)


def write_fixture_files(directory: str | Path) -> list[Path]:
    """Write every fixture as a carrier file; returns the paths written."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in sorted(GRAPH_TEXTS.items()):
        p = d / f"{name}.g"
        p.write_text(text)
        written.append(p)
    for name, text in sorted(KGRAPH_TEXTS.items()):
        p = d / f"{name}.kg"
        p.write_text(text)
        written.append(p)
    return written
