"""Shared graph builders and independent oracles for the test suite.

Oracles here deliberately avoid the library's solver machinery: plain
enumeration in input order, a locally written row reduction, and exhaustive
set-partition search, so that solver and oracle can only agree by being right.
"""

from __future__ import annotations

import itertools
from random import Random

from sr_chroma.graph import Graph


def complete_graph(n: int) -> Graph:
    labels = [str(i + 1) for i in range(n)]
    edges = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    return Graph.build(labels, edges)


def cycle_graph(n: int) -> Graph:
    labels = [str(i + 1) for i in range(n)]
    edges = [(labels[i], labels[(i + 1) % n]) for i in range(n)]
    return Graph.build(labels, edges)


def path_graph(n: int) -> Graph:
    labels = [str(i + 1) for i in range(n)]
    edges = [(labels[i], labels[i + 1]) for i in range(n - 1)]
    return Graph.build(labels, edges)


def empty_graph(n: int) -> Graph:
    return Graph.build([str(i + 1) for i in range(n)], [])


def all_graphs(n: int):
    """Every labeled graph on vertices 1..n."""
    labels = [str(i + 1) for i in range(n)]
    pairs = [(labels[i], labels[j]) for i in range(n) for j in range(i + 1, n)]
    for r in range(len(pairs) + 1):
        for chosen in itertools.combinations(pairs, r):
            yield Graph.build(labels, chosen)


def is_connected(g: Graph) -> bool:
    if not g.vertices:
        return True
    seen = {g.vertices[0]}
    frontier = [g.vertices[0]]
    while frontier:
        v = frontier.pop()
        for u in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return len(seen) == len(g.vertices)


def connected_graphs(n: int):
    return (g for g in all_graphs(n) if is_connected(g))


def random_graph(rng: Random, max_n: int = 8) -> Graph:
    n = rng.randint(1, max_n)
    labels = [str(i + 1) for i in range(n)]
    edges = [
        (labels[i], labels[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < 0.5
    ]
    return Graph.build(labels, edges)


# -- chromatic oracle --------------------------------------------------------

def oracle_colorable(g: Graph, k: int) -> bool:
    """Plain depth-first enumeration of all <=k colorings in input order."""
    n = len(g.vertices)
    adj = [[g.index[u] for u in g.adjacency[v]] for v in g.vertices]
    colors = [0] * n

    def go(i: int) -> bool:
        if i == n:
            return True
        for c in range(1, k + 1):
            if all(colors[u] != c for u in adj[i] if u < i):
                colors[i] = c
                if go(i + 1):
                    return True
                colors[i] = 0
        return False

    return n == 0 or go(0)


def oracle_chromatic(g: Graph) -> int:
    if not g.vertices:
        return 0
    k = 1
    while not oracle_colorable(g, k):
        k += 1
    return k


# -- span-coloring oracle ----------------------------------------------------

def rref_in_span(vectors: list[tuple[int, ...]], target: tuple[int, ...], p: int) -> bool:
    """Row-reduce from scratch; written independently of the library."""
    rows = [list(v) for v in vectors]
    width = len(target)
    pivots: list[int] = []
    reduced: list[list[int]] = []
    for row in rows:
        row = row[:]
        for pos, r in zip(pivots, reduced):
            factor = row[pos]
            if factor:
                row = [(a - factor * b) % p for a, b in zip(row, r)]
        lead = next((i for i, a in enumerate(row) if a % p), None)
        if lead is None:
            continue
        inv = pow(row[lead], p - 2, p) if p > 2 else row[lead]
        reduced.append([(a * inv) % p for a in row])
        pivots.append(lead)
    res = list(target)
    for pos, r in zip(pivots, reduced):
        factor = res[pos]
        if factor:
            res = [(a - factor * b) % p for a, b in zip(res, r)]
    return all(a % p == 0 for a in res)


def projective_vectors(p: int, n: int) -> list[tuple[int, ...]]:
    """All vectors with first nonzero coordinate 1."""
    out = []
    for vec in itertools.product(range(p), repeat=n):
        lead = next((c for c in vec if c), None)
        if lead == 1:
            out.append(vec)
    return out


def rref_rank(vectors: list[tuple[int, ...]], p: int) -> int:
    rows = []
    pivots: list[int] = []
    for vec in vectors:
        row = list(vec)
        for pos, r in zip(pivots, rows):
            factor = row[pos]
            if factor:
                row = [(a - factor * b) % p for a, b in zip(row, r)]
        lead = next((i for i, a in enumerate(row) if a % p), None)
        if lead is None:
            continue
        inv = pow(row[lead], p - 2, p) if p > 2 else row[lead]
        rows.append([(a * inv) % p for a in row])
        pivots.append(lead)
    return len(rows)


def oracle_has_span_coloring(g: Graph, p: int, n: int) -> bool:
    """All projective assignments in input vertex order. A branch is cut only
    when it is already dead: some assigned vertex's condition is violated, or
    an unassigned vertex's assigned neighborhood spans the whole space."""
    verts = list(g.vertices)
    m = len(verts)
    adj = [[g.index[u] for u in g.adjacency[v]] for v in verts]
    adj_before = [[u for u in adj[i] if u < i] for i in range(m)]
    cands = projective_vectors(p, n)
    chosen: list[tuple[int, ...]] = []

    def still_alive(i: int) -> bool:
        if rref_in_span([chosen[u] for u in adj_before[i]], chosen[i], p):
            return False
        for j in adj[i]:
            assigned_nbrs = [chosen[u] for u in adj[j] if u <= i]
            if j < i:
                if rref_in_span(assigned_nbrs, chosen[j], p):
                    return False
            elif rref_rank(assigned_nbrs, p) == n:
                return False
        return True

    def go(i: int) -> bool:
        if i == m:
            return True
        for vec in cands:
            chosen.append(vec)
            if still_alive(i) and go(i + 1):
                return True
            chosen.pop()
        return False

    return go(0)


def oracle_span_chromatic(g: Graph, p: int) -> int:
    if not g.vertices:
        return 0
    n = 1
    while n <= len(g.vertices):
        if oracle_has_span_coloring(g, p, n):
            return n
        n += 1
    raise AssertionError("oracle found no span coloring up to |V| dimensions")


# -- face enumeration oracle -------------------------------------------------

def oracle_face_set(k) -> set[frozenset[str]]:
    """Every face of the join: any block subset union a face of the graph."""
    x_part = [lbl for i, lbl in enumerate(k.gen_labels) if not k.is_graph_generator(i)]
    graph_faces = [frozenset()]
    graph_faces += [frozenset({f"y_{v}"}) for v in k.graph.vertices]
    graph_faces += [frozenset({f"y_{u}", f"y_{v}"}) for u, v in k.graph.sorted_edges()]
    faces = set()
    for r in range(len(x_part) + 1):
        for xs in itertools.combinations(x_part, r):
            for gf in graph_faces:
                faces.add(frozenset(xs) | gf)
    return faces


# -- multiset partition oracle -----------------------------------------------

def oracle_multiset_decomposable(entries: tuple[int, ...], fam) -> bool:
    """Exhaust every set partition of the entries (by position)."""
    items = list(entries)

    def partitions(seq):
        if not seq:
            yield []
            return
        head, rest = seq[0], seq[1:]
        for part in partitions(rest):
            for i in range(len(part)):
                yield part[:i] + [[head] + part[i]] + part[i + 1 :]
            yield [[head]] + part

    if not items:
        return True
    return any(
        all(fam.is_allowed(tuple(sorted(block))) for block in part)
        for part in partitions(items)
    )
