"""JSON formats for matroids, graphs and reports.

Matroid documents look like ``{"n": 4, "repr": {"kind": ..., ...}}`` with kinds

- ``bases``: ``{"bases": [[1, 2], ...], "labels": [...]?}``
- ``hyperplanes_paving``: ``{"m": m, "blocks": [[...], ...]}``
- ``graph``: ``{"V": V, "edges": [[u, v], ...]}``
- ``uniform``: ``{"r": r}``
- ``direct_sum``: ``{"parts": [<matroid document>, ...]}``
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import MatroidInputError
from .graphs import Graph
from .matroid import Matroid, cycle_matroid, direct_sum, from_m_partition, uniform


def dumps(obj) -> str:
    """Canonical, byte-stable JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": "), ensure_ascii=True) + "\n"


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise MatroidInputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _field(d, key, kind):
    if key not in d:
        raise MatroidInputError(f"{kind} document is missing {key!r}")
    return d[key]


def matroid_from_json(doc) -> Matroid:
    if not isinstance(doc, dict):
        raise MatroidInputError("matroid document must be an object")
    rep = _field(doc, "repr", "matroid")
    kind = _field(rep, "kind", "repr")
    n = doc.get("n")
    if kind == "bases":
        M = Matroid.from_bases(_field(rep, "bases", kind), n=n, labels=rep.get("labels"))
    elif kind == "hyperplanes_paving":
        M = from_m_partition(_field(doc, "n", "matroid"), _field(rep, "blocks", kind), _field(rep, "m", kind))
    elif kind == "graph":
        M = cycle_matroid(graph_from_json(rep))
    elif kind == "uniform":
        M = uniform(_field(rep, "r", kind), _field(doc, "n", "matroid"))
    elif kind == "direct_sum":
        M = direct_sum([matroid_from_json(p) for p in _field(rep, "parts", kind)])
    else:
        raise MatroidInputError(f"unknown matroid kind {kind!r}")
    if n is not None and M.n != n:
        raise MatroidInputError(f"declared n={n} but the representation has {M.n} elements")
    return M


def matroid_to_json(M: Matroid) -> dict:
    rep = {"kind": "bases", "bases": [sorted(b) for b in M.sorted_bases()]}
    if M.labels != tuple(range(1, M.n + 1)):
        rep["labels"] = list(M.labels)
    return {"n": M.n, "repr": rep}


def paving_to_json(n: int, blocks, m: int) -> dict:
    return {"n": n, "repr": {"kind": "hyperplanes_paving", "m": m, "blocks": [sorted(b) for b in blocks]}}


def graph_from_json(doc) -> Graph:
    if not isinstance(doc, dict):
        raise MatroidInputError("graph document must be an object")
    edges = _field(doc, "edges", "graph")
    if any(not isinstance(e, (list, tuple)) or len(e) != 2 for e in edges):
        raise MatroidInputError("edges must be [u, v] pairs")
    return Graph(int(_field(doc, "V", "graph")), tuple(tuple(e) for e in edges))


def load_matroid(path) -> Matroid:
    return matroid_from_json(read_json(path))


def load_graph(path) -> Graph:
    return graph_from_json(read_json(path))
