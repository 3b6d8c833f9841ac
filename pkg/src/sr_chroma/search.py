"""Exhaustive search for power-operation tables.

Unknown table entries are expanded coefficient-by-coefficient over the graded
monomial basis (generators in canonical order, operation index ascending,
basis monomials in graded-lex order). Every relation instance within the
degree bound is compiled once into polynomial equations over F_p in those
coefficients; the search is a depth-first enumeration in that fixed order
with unit propagation, so a branch dies as soon as any equation loses its
last variable without being satisfiable. An exhausted search is therefore a
certificate that no table passes the checkers, relative to the relation set
and degree bound.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .algebra import AlgebraElement, JoinComplex, Monomial, monomial_in_graph_ideal
from .errors import ContractError, SearchSpaceExceeded
from .span import is_odd_prime
from .steenrod import (
    PowerRelation,
    SteenrodTable,
    apply_power,
    check_ideal_preservation,
    check_relations,
    check_unstability,
    default_degree_bound,
    default_relation_set,
    relation_instance_bases,
)
from .symbolic import SymPoly

DEFAULT_NODE_CAP = 10**8


class PolyCoeffs:
    """SymPoly coefficients for the shared Cartan engine."""

    def __init__(self, p: int):
        self.p = p
        self.zero = SymPoly.const(p, 0)
        self.one = SymPoly.const(p, 1)

    def add(self, a: SymPoly, b: SymPoly) -> SymPoly:
        return a + b

    def mul(self, a: SymPoly, b: SymPoly) -> SymPoly:
        return a * b

    def scale(self, a: SymPoly, c: int) -> SymPoly:
        return a.scale(c)

    def is_zero(self, a: SymPoly) -> bool:
        return a.is_zero()


@dataclass(frozen=True)
class EntryBlock:
    """One unknown table entry and its coefficient variables."""

    label: str
    k: int
    basis: tuple[Monomial, ...]
    offset: int


@dataclass
class SearchOutcome:
    status: str  # "found" | "exhausted"
    table: SteenrodTable | None
    relation_names: tuple[str, ...]
    degree_bound: int
    variables: int
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"

    def relativity(self) -> str:
        rels = "; ".join(self.relation_names)
        return f"exhausted (relative to relation set {{{rels}}}, degree bound {self.degree_bound})"


def unknown_entry_blocks(ambient, p: int) -> tuple[list[EntryBlock], int]:
    """Entries below the forced top, with graph-generator bases cut down to the
    preserved ideal (a table outside it fails check_ideal_preservation anyway)."""
    blocks: list[EntryBlock] = []
    offset = 0
    is_join = isinstance(ambient, JoinComplex)
    for i, label in enumerate(ambient.gen_labels):
        deg = ambient.gen_degrees[i]
        for k in range(1, deg // 2):
            basis = list(ambient.monomial_basis(deg + 2 * k * (p - 1)))
            if is_join and ambient.is_graph_generator(i):
                vertex = ambient.vertex_of_index(i)
                basis = [m for m in basis if monomial_in_graph_ideal(ambient, m, vertex)]
            if basis:
                blocks.append(EntryBlock(label, k, tuple(basis), offset))
                offset += len(basis)
    return blocks, offset


def _symbolic_entry_fn(ambient, p: int, blocks: list[EntryBlock]):
    by_key = {(b.label, b.k): b for b in blocks}
    labels = ambient.gen_labels
    degrees = ambient.gen_degrees

    def fn(gen_index: int, j: int) -> dict[Monomial, SymPoly]:
        label = labels[gen_index]
        deg = degrees[gen_index]
        if 2 * j > deg:
            return {}
        if 2 * j == deg:
            top = Monomial(
                tuple(p if t == gen_index else 0 for t in range(len(labels)))
            )
            return {top: SymPoly.const(p, 1)}
        block = by_key.get((label, j))
        if block is None:
            return {}
        return {m: SymPoly.var(p, block.offset + t) for t, m in enumerate(block.basis)}

    return fn


def compile_constraints(
    ambient, p: int, relations: tuple[PowerRelation, ...], degree_bound: int, entry_fn
) -> list[SymPoly]:
    ring = PolyCoeffs(p)
    cache: dict = {}
    constraints: list[SymPoly] = []
    seen: set = set()
    for rel in relations:
        a, b = rel.lhs
        for mono in relation_instance_bases(ambient, p, rel, degree_bound):
            base = {mono: ring.one}
            lhs = apply_power(
                ambient, ring, entry_fn, apply_power(ambient, ring, entry_fn, base, b, cache), a, cache
            )
            diff: dict[Monomial, SymPoly] = dict(lhs)
            for c, outer, inner in rel.rhs:
                piece = apply_power(
                    ambient, ring, entry_fn, apply_power(ambient, ring, entry_fn, base, inner, cache), outer, cache
                )
                for m, v in piece.items():
                    diff[m] = ring.add(diff.get(m, ring.zero), v.scale(-c))
            for poly in diff.values():
                if poly.is_zero():
                    continue
                key = poly.canonical_key()
                if key not in seen:
                    seen.add(key)
                    constraints.append(poly)
    return constraints


class _Solver:
    def __init__(self, p: int, nvars: int, constraints: list[SymPoly], node_cap: int):
        self.p = p
        self.node_cap = node_cap
        self.assign: list[int | None] = [None] * nvars
        self.stacks: list[list[SymPoly]] = [[c] for c in constraints]
        self.by_var: list[list[int]] = [[] for _ in range(nvars)]
        for ci, poly in enumerate(constraints):
            for v in poly.variables():
                self.by_var[v].append(ci)
        self.events: list[tuple[str, int]] = []
        self.nodes = 0

    def _classify(self, ci: int, queue: list[tuple[int, int]]) -> bool:
        poly = self.stacks[ci][-1]
        left = poly.variables()
        if not left:
            return poly.is_zero()
        if len(left) == 1:
            v = next(iter(left))
            roots = [x for x in range(self.p) if poly.substitute({v: x}).is_zero()]
            if not roots:
                return False
            if len(roots) == 1:
                queue.append((v, roots[0]))
        return True

    def _set(self, var: int, val: int, queue: list[tuple[int, int]]) -> bool:
        cur = self.assign[var]
        if cur is not None:
            return cur == val
        self.assign[var] = val
        self.events.append(("a", var))
        for ci in self.by_var[var]:
            poly = self.stacks[ci][-1]
            if var not in poly.variables():
                continue
            self.stacks[ci].append(poly.substitute({var: val}))
            self.events.append(("r", ci))
            if not self._classify(ci, queue):
                return False
        return True

    def _propagate(self, queue: list[tuple[int, int]]) -> bool:
        while queue:
            v, val = queue.pop()
            if not self._set(v, val, queue):
                return False
        return True

    def _undo(self, mark: int) -> None:
        while len(self.events) > mark:
            kind, x = self.events.pop()
            if kind == "a":
                self.assign[x] = None
            else:
                self.stacks[x].pop()

    def solve(self) -> list[int] | None:
        queue: list[tuple[int, int]] = []
        for ci in range(len(self.stacks)):
            if not self._classify(ci, queue):
                return None
        if not self._propagate(queue):
            return None
        return self._dfs()

    def _pick_variable(self) -> int | None:
        """Unassigned variable from the tightest live constraint (fail-first);
        ties break to the lowest constraint index, then the lowest variable."""
        best_n = None
        best_ci = None
        for ci, stack in enumerate(self.stacks):
            left = stack[-1].variables()
            n = len(left)
            if n == 0:
                continue  # satisfied residual (conflicts never survive propagation)
            if best_n is None or n < best_n:
                best_n, best_ci = n, ci
                if n == 1:
                    break
        if best_ci is None:
            return None
        return min(self.stacks[best_ci][-1].variables())

    def _dfs(self) -> list[int] | None:
        var = self._pick_variable()
        if var is None:
            # every constraint is satisfied; remaining variables are free
            return [v if v is not None else 0 for v in self.assign]
        for val in range(self.p):
            self.nodes += 1
            if self.nodes > self.node_cap:
                raise SearchSpaceExceeded(
                    f"node budget of {self.node_cap} exceeded after exploring"
                    f" {self.nodes} branch nodes"
                    f" (full coefficient space {self.p}^{len(self.assign)})",
                    self.p ** len(self.assign),
                )
            mark = len(self.events)
            if self._propagate([(var, val)]):
                res = self._dfs()
                if res is not None:
                    return res
            self._undo(mark)
        return None


def table_from_assignment(
    ambient, p: int, blocks: list[EntryBlock], assignment: list[int]
) -> SteenrodTable:
    entries: dict[tuple[str, int], AlgebraElement] = {}
    by_key = {(b.label, b.k): b for b in blocks}
    for i, label in enumerate(ambient.gen_labels):
        deg = ambient.gen_degrees[i]
        top = deg // 2
        for k in range(1, top + 1):
            if k == top:
                entries[(label, k)] = ambient.generator_element(label, p) ** p
                continue
            block = by_key.get((label, k))
            if block is None:
                entries[(label, k)] = ambient.zero(p)
            else:
                terms = {
                    m: assignment[block.offset + t] for t, m in enumerate(block.basis)
                }
                entries[(label, k)] = AlgebraElement.make(ambient, p, terms)
    return SteenrodTable(p, ambient, entries)


def search_action(
    ambient,
    p: int,
    degree_bound: int | None = None,
    relation_set: tuple[PowerRelation, ...] | None = None,
    node_cap: int = DEFAULT_NODE_CAP,
) -> SearchOutcome:
    """Find a table passing all checkers, or certify that none exists.

    `exhausted` is always relative to the relation set and degree bound; a
    found table is re-verified through the public checkers before returning.
    """
    if not is_odd_prime(p):
        raise ContractError(f"action search needs an odd prime, got {p}")
    bound = default_degree_bound(p) if degree_bound is None else degree_bound
    relations = default_relation_set(p) if relation_set is None else tuple(relation_set)
    blocks, nvars = unknown_entry_blocks(ambient, p)
    entry_fn = _symbolic_entry_fn(ambient, p, blocks)
    constraints = compile_constraints(ambient, p, relations, bound, entry_fn)
    solver = _Solver(p, nvars, constraints, node_cap)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 3 * nvars + 1000))
    try:
        assignment = solver.solve()
    finally:
        sys.setrecursionlimit(old_limit)
    names = tuple(r.name for r in relations)
    if assignment is None:
        return SearchOutcome("exhausted", None, names, bound, nvars, solver.nodes)
    table = table_from_assignment(ambient, p, blocks, assignment)
    reports = (
        check_relations(table, relations, bound),
        check_ideal_preservation(table),
        check_unstability(table),
    )
    if not all(r.ok for r in reports):
        raise AssertionError("search produced a table that fails its own checkers")
    return SearchOutcome("found", table, names, bound, nvars, solver.nodes)
