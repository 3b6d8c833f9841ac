"""Finite simple graphs: edge-list parsing, exact chromatic number, 2-core."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import ContractError, GraphParseError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; vertex order is first-appearance order."""

    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def __post_init__(self):
        index = {v: i for i, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise ContractError("duplicate vertex labels")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ContractError(f"loop edge at {u!r}")
            if u not in index or v not in index:
                raise ContractError(f"edge ({u!r}, {v!r}) references unknown vertex")
            normalized.add((u, v) if index[u] < index[v] else (v, u))
        object.__setattr__(self, "edges", frozenset(normalized))

    @staticmethod
    def build(vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()) -> "Graph":
        return Graph(tuple(vertices), frozenset(tuple(e) for e in edges))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        if v not in self.index:
            raise ContractError(f"unknown vertex {v!r}")
        return self.adjacency[v]

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def min_degree(self) -> int:
        if not self.vertices:
            return 0
        return min(len(self.adjacency[v]) for v in self.vertices)

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(self.edges, key=lambda e: (self.index[e[0]], self.index[e[1]]))

    def induced(self, keep: Iterable[str]) -> "Graph":
        kept = set(keep)
        vertices = tuple(v for v in self.vertices if v in kept)
        edges = frozenset(e for e in self.edges if e[0] in kept and e[1] in kept)
        return Graph(vertices, edges)

    def has_edge(self, u: str, v: str) -> bool:
        i, j = self.index[u], self.index[v]
        pair = (u, v) if i < j else (v, u)
        return pair in self.edges


@dataclass(frozen=True, eq=True)
class Coloring:
    """Proper vertex coloring into {1..num_colors}."""

    num_colors: int
    assignment: dict[str, int]

    def colors_used(self) -> int:
        return len(set(self.assignment.values()))


def coloring_is_valid(g: Graph, c: Coloring) -> bool:
    if set(c.assignment) != set(g.vertices):
        return False
    if any(not 1 <= col <= c.num_colors for col in c.assignment.values()):
        return False
    return all(c.assignment[u] != c.assignment[v] for u, v in g.edges)


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: `v <label>`, `e <a> <b>`, `#` comments."""
    vertices: list[str] = []
    seen: set[str] = set()
    edges: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "v":
            if len(tokens) != 2:
                raise GraphParseError("expected `v <label>`", lineno)
            if tokens[1] not in seen:
                seen.add(tokens[1])
                vertices.append(tokens[1])
        elif tokens[0] == "e":
            if len(tokens) != 3:
                raise GraphParseError("expected `e <label> <label>`", lineno)
            u, v = tokens[1], tokens[2]
            if u == v:
                raise GraphParseError(f"loop edge at {u!r}", lineno)
            for w in (u, v):
                if w not in seen:
                    raise GraphParseError(f"unknown vertex reference {w!r}", lineno)
            edges.add((u, v))
        else:
            raise GraphParseError(f"unknown directive {tokens[0]!r}", lineno)
    return Graph(tuple(vertices), frozenset(edges))


def serialize_graph(g: Graph) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def neighbors(g: Graph, v: str) -> frozenset[str]:
    return g.neighbors(v)


def two_core(g: Graph) -> Graph:
    """Maximal subgraph of minimum degree >= 2 (iterated shedding of low-degree vertices)."""
    current = g
    while current.vertices:
        low = [v for v in current.vertices if current.degree(v) < 2]
        if not low:
            break
        keep = [v for v in current.vertices if current.degree(v) >= 2]
        current = current.induced(keep)
    return current


def max_clique(g: Graph) -> tuple[str, ...]:
    """Exact maximum clique, exponential search; fine at the sizes handled here."""
    order = sorted(g.vertices, key=lambda v: (-g.degree(v), g.index[v]))
    adj = g.adjacency
    best: list[str] = []

    def extend(clique: list[str], candidates: list[str]) -> None:
        nonlocal best
        if len(clique) > len(best):
            best = list(clique)
        if len(clique) + len(candidates) <= len(best):
            return
        for i, v in enumerate(candidates):
            extend(clique + [v], [u for u in candidates[i + 1 :] if u in adj[v]])

    extend([], order)
    return tuple(best)


def _colorable(g: Graph, k: int) -> bool:
    """Backtracking feasibility check with saturation-first vertex selection."""
    n = len(g.vertices)
    adj = [sorted(g.index[u] for u in g.adjacency[v]) for v in g.vertices]
    colors = [0] * n
    nbr_colors: list[set[int]] = [set() for _ in range(n)]

    def pick() -> int:
        cand, best = -1, (-1, -1)
        for v in range(n):
            if colors[v] == 0:
                key = (len(nbr_colors[v]), len(adj[v]))
                if key > best:
                    cand, best = v, key
        return cand

    def go(done: int) -> bool:
        if done == n:
            return True
        v = pick()
        if len(nbr_colors[v]) >= k:
            return False
        for c in range(1, k + 1):
            if c in nbr_colors[v]:
                continue
            colors[v] = c
            touched = []
            for u in adj[v]:
                if colors[u] == 0 and c not in nbr_colors[u]:
                    nbr_colors[u].add(c)
                    touched.append(u)
            if go(done + 1):
                return True
            for u in touched:
                nbr_colors[u].remove(c)
            colors[v] = 0
        return False

    return go(0)


def _lex_least_coloring(g: Graph, k: int) -> dict[str, int]:
    """First k-coloring in lexicographic order over the input vertex order."""
    n = len(g.vertices)
    adj = [[g.index[u] for u in g.adjacency[v]] for v in g.vertices]
    colors = [0] * n

    def go(i: int) -> bool:
        if i == n:
            return True
        for c in range(1, k + 1):
            if any(colors[u] == c for u in adj[i] if u < i):
                continue
            colors[i] = c
            if go(i + 1):
                return True
            colors[i] = 0
        return False

    if not go(0):
        raise ContractError(f"graph is not {k}-colorable")
    return {v: colors[i] for i, v in enumerate(g.vertices)}


def chromatic_number(g: Graph) -> tuple[int, Coloring]:
    """Exact chromatic number with the lexicographically least witness."""
    if not g.vertices:
        return 0, Coloring(0, {})
    if not g.edges:
        return 1, Coloring(1, {v: 1 for v in g.vertices})
    lower = max(2, len(max_clique(g)))
    k = lower
    while not _colorable(g, k):
        k += 1
    return k, Coloring(k, _lex_least_coloring(g, k))
