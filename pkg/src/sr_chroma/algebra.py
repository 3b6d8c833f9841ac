"""Join complexes, free polynomial ambients, and exact arithmetic mod p.

Both ambient flavors expose the same surface: an ordered generator list with
even degrees, a downward-closed face predicate on generator supports, graded
monomial bases, and reduction of monomials whose support is not a face.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import ContractError
from .graph import Graph
from .span import is_prime


@dataclass(frozen=True, slots=True)
class Monomial:
    """Exponent vector over an ambient's generator list."""

    exps: tuple[int, ...]

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps, strict=True)))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exps) if e)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps, strict=True))

    def divide_by(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ContractError("monomial division with negative exponent")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps, strict=True)))

    def is_unit(self) -> bool:
        return all(e == 0 for e in self.exps)

    def exponent(self, i: int) -> int:
        return self.exps[i]


class _AmbientBase:
    """Shared machinery for graded polynomial ambients."""

    gen_labels: tuple[str, ...]
    gen_degrees: tuple[int, ...]

    def _init_generators(self, labels: Sequence[str], degrees: Sequence[int]) -> None:
        if len(set(labels)) != len(labels):
            raise ContractError("generator labels are not distinct")
        for lbl, d in zip(labels, degrees):
            if d <= 0 or d % 2:
                raise ContractError(f"generator {lbl!r} needs a positive even degree, got {d}")
        # subclasses are frozen dataclasses; bypass their __setattr__
        object.__setattr__(self, "gen_labels", tuple(labels))
        object.__setattr__(self, "gen_degrees", tuple(degrees))
        object.__setattr__(self, "label_index", {lbl: i for i, lbl in enumerate(labels)})
        object.__setattr__(self, "_basis_cache", {})

    # -- face structure (trivial in the free case) ---------------------------
    def face_ok(self, support: Iterable[int]) -> bool:
        raise NotImplementedError

    def graph_generator_indices(self) -> tuple[int, ...]:
        return ()

    # -- monomial helpers -----------------------------------------------------
    @property
    def num_generators(self) -> int:
        return len(self.gen_labels)

    def unit_monomial(self) -> Monomial:
        return Monomial((0,) * self.num_generators)

    def generator_monomial(self, label: str, e: int = 1) -> Monomial:
        i = self._index_of(label)
        return Monomial(tuple(e if j == i else 0 for j in range(self.num_generators)))

    def monomial(self, mapping: dict[str, int]) -> Monomial:
        exps = [0] * self.num_generators
        for lbl, e in mapping.items():
            exps[self._index_of(lbl)] = e
        return Monomial(tuple(exps))

    def _index_of(self, label: str) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise ContractError(f"unknown generator {label!r}") from None

    def degree_of(self, m: Monomial) -> int:
        if len(m.exps) != self.num_generators:
            raise ContractError("monomial does not match this ambient")
        return sum(e * d for e, d in zip(m.exps, self.gen_degrees))

    def monomial_key(self, m: Monomial):
        # graded lexicographic: lower degree first, then higher power of an
        # earlier generator first
        return (self.degree_of(m), tuple(-e for e in m.exps))

    def reduce_monomial(self, m: Monomial) -> Monomial | None:
        """m itself when its support is a face, otherwise None (zero)."""
        if len(m.exps) != self.num_generators:
            raise ContractError("monomial does not match this ambient")
        return m if self.face_ok(m.support()) else None

    def monomial_basis(self, degree: int) -> tuple[Monomial, ...]:
        """All face-supported monomials of the given degree, canonical order."""
        if degree < 0:
            return ()
        cached = self._basis_cache.get(degree)
        if cached is not None:
            return cached
        out: list[Monomial] = []
        n = self.num_generators
        exps = [0] * n

        def fill(i: int, remaining: int, support: tuple[int, ...]) -> None:
            if remaining == 0:
                out.append(Monomial(tuple(exps)))
                return
            if i == n:
                return
            d = self.gen_degrees[i]
            fill(i + 1, remaining, support)
            for e in range(1, remaining // d + 1):
                new_support = support + (i,)
                if not self.face_ok(new_support):
                    break
                exps[i] = e
                fill(i + 1, remaining - e * d, new_support)
            exps[i] = 0

        fill(0, degree, ())
        out.sort(key=self.monomial_key)
        result = tuple(out)
        self._basis_cache[degree] = result
        return result

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m.exps):
            if e == 1:
                parts.append(self.gen_labels[i])
            elif e > 1:
                parts.append(f"{self.gen_labels[i]}^{e}")
        return "*".join(parts) if parts else "1"

    # -- element constructors ---------------------------------------------------
    def element(self, p: int, terms: dict[Monomial, int]) -> "AlgebraElement":
        return AlgebraElement.make(self, p, terms)

    def zero(self, p: int) -> "AlgebraElement":
        return AlgebraElement.make(self, p, {})

    def one(self, p: int) -> "AlgebraElement":
        return AlgebraElement.make(self, p, {self.unit_monomial(): 1})

    def generator_element(self, label: str, p: int) -> "AlgebraElement":
        return AlgebraElement.make(self, p, {self.generator_monomial(label): 1})


def x_label(block: int, i: int) -> str:
    return f"x{i}^({block})"


def y_label(vertex: str) -> str:
    return f"y_{vertex}"


@dataclass(frozen=True)
class JoinComplex(_AmbientBase):
    """K = simplex blocks joined with a graph, plus the even grading.

    Generators are x_i^(k) for block k and y_v for graph vertices; a generator
    subset is a face exactly when its y-part is empty, a vertex, or an edge.
    blocks entries are (size, degree) pairs; zero-size blocks contribute no
    generators.
    """

    blocks: tuple[tuple[int, int], ...]
    graph: Graph
    graph_degree: int

    def __post_init__(self):
        labels: list[str] = []
        degrees: list[int] = []
        for k, (size, deg) in enumerate(self.blocks, 1):
            if size < 0:
                raise ContractError("block sizes must be non-negative")
            for i in range(1, size + 1):
                labels.append(x_label(k, i))
                degrees.append(deg)
        x_count = len(labels)
        for v in self.graph.vertices:
            labels.append(y_label(v))
            degrees.append(self.graph_degree)
        self._init_generators(labels, degrees)
        object.__setattr__(self, "_graph_start", x_count)

    @cached_property
    def _edge_index_pairs(self) -> frozenset[tuple[int, int]]:
        pairs = set()
        for u, v in self.graph.edges:
            i = self.label_index[y_label(u)]
            j = self.label_index[y_label(v)]
            pairs.add((min(i, j), max(i, j)))
        return frozenset(pairs)

    def graph_generator_indices(self) -> tuple[int, ...]:
        return tuple(range(self._graph_start, self.num_generators))

    def is_graph_generator(self, index: int) -> bool:
        return index >= self._graph_start

    def y_index(self, vertex: str) -> int:
        return self._index_of(y_label(vertex))

    def vertex_of_index(self, index: int) -> str:
        if not self.is_graph_generator(index):
            raise ContractError("not a graph generator index")
        return self.graph.vertices[index - self._graph_start]

    def first_block_labels(self) -> tuple[str, ...]:
        if not self.blocks:
            return ()
        size = self.blocks[0][0]
        return tuple(x_label(1, i) for i in range(1, size + 1))

    def face_ok(self, support: Iterable[int]) -> bool:
        ys = [i for i in support if i >= self._graph_start]
        if len(ys) <= 1:
            return True
        if len(ys) > 2:
            return False
        i, j = sorted(ys)
        return (i, j) in self._edge_index_pairs

    def maximal_faces(self) -> list[frozenset[str]]:
        """All maximal faces: every block generator plus one edge (or isolated
        vertex) of the graph; just the block generators when the graph is empty."""
        base = frozenset(self.gen_labels[: self._graph_start])
        faces: list[frozenset[str]] = []
        for u, v in self.graph.sorted_edges():
            faces.append(base | {y_label(u), y_label(v)})
        for v in self.graph.vertices:
            if not self.graph.neighbors(v):
                faces.append(base | {y_label(v)})
        if not faces:
            faces.append(base)
        return faces

    def serialize_header(self) -> list[str]:
        lines = [f"blocks = {', '.join(f'{s}@{d}' for s, d in self.blocks) or '(none)'}"]
        lines.append(f"graph_degree = {self.graph_degree}")
        return lines


@dataclass(frozen=True)
class FreePolynomialAlgebra(_AmbientBase):
    """Free graded polynomial algebra on labelled even-degree generators."""

    generators: tuple[tuple[str, int], ...]

    def __post_init__(self):
        self._init_generators([g for g, _ in self.generators], [d for _, d in self.generators])

    def face_ok(self, support: Iterable[int]) -> bool:
        return True


def parse_free_algebra(text: str) -> FreePolynomialAlgebra:
    """Parse `name:degree,name:degree,...` into a free polynomial ambient."""
    gens = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, deg = chunk.partition(":")
        try:
            d = int(deg)
        except ValueError:
            raise ContractError(f"bad generator spec {chunk!r}, expected name:degree") from None
        gens.append((name.strip(), d))
    if not gens:
        raise ContractError("empty generator list")
    return FreePolynomialAlgebra(tuple(gens))


@dataclass(frozen=True)
class AlgebraElement:
    """F_p-linear combination of face-supported monomials, always reduced."""

    ambient: object
    p: int
    terms: tuple[tuple[Monomial, int], ...]

    @staticmethod
    def make(ambient, p: int, terms: dict[Monomial, int]) -> "AlgebraElement":
        if not is_prime(p):
            raise ContractError(f"{p} is not prime")
        cleaned: dict[Monomial, int] = {}
        for m, c in terms.items():
            if ambient.reduce_monomial(m) is None:
                continue
            c %= p
            if c:
                cleaned[m] = c
        ordered = tuple(sorted(cleaned.items(), key=lambda mc: ambient.monomial_key(mc[0])))
        return AlgebraElement(ambient, p, ordered)

    def terms_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "AlgebraElement") -> None:
        if self.ambient != other.ambient:
            raise ContractError("elements live in different ambients")
        if self.p != other.p:
            raise ContractError(f"prime mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_compatible(other)
        acc = self.terms_dict()
        for m, c in other.terms:
            acc[m] = (acc.get(m, 0) + c) % self.p
        return AlgebraElement.make(self.ambient, self.p, acc)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement.make(self.ambient, self.p, {m: v * c for m, v in self.terms})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_compatible(other)
        acc: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 * m2
                if self.ambient.reduce_monomial(m) is None:
                    continue
                acc[m] = (acc.get(m, 0) + c1 * c2) % self.p
        return AlgebraElement.make(self.ambient, self.p, acc)

    def __pow__(self, e: int) -> "AlgebraElement":
        if e < 0:
            raise ContractError("negative power")
        out = self.ambient.one(self.p)
        for _ in range(e):
            out = out * self
        return out

    def homogeneous_degree(self) -> int | None:
        degs = {self.ambient.degree_of(m) for m, _ in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ContractError("element is not homogeneous")
        return degs.pop()

    def coefficient(self, m: Monomial) -> int:
        for mono, c in self.terms:
            if mono == m:
                return c
        return 0

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            if m.is_unit():
                parts.append(str(c))
            else:
                parts.append(f"{c}*{self.ambient.format_monomial(m)}")
        return " + ".join(parts)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    return a * b


def reduce_monomial(k, m: Monomial) -> Monomial | None:
    return k.reduce_monomial(m)


def maximal_faces(k: JoinComplex) -> list[frozenset[str]]:
    return k.maximal_faces()


def ideal_membership(a: AlgebraElement, gens: Sequence[Monomial]) -> bool:
    """Sound and complete for monomial ideals: every term divisible by a generator."""
    for m, _ in a.terms:
        if not any(g.divides(m) for g in gens):
            return False
    return True


def graph_ideal_generators(k: JoinComplex, vertex: str) -> list[Monomial]:
    """Generators of (y_v) + (y_j y_k : j < k) inside the complex's ring."""
    gens = [k.generator_monomial(y_label(vertex))]
    ys = [y_label(v) for v in k.graph.vertices]
    for a in range(len(ys)):
        for b in range(a + 1, len(ys)):
            m = k.monomial({ys[a]: 1, ys[b]: 1})
            if k.reduce_monomial(m) is not None:
                gens.append(m)
    return gens


def monomial_in_graph_ideal(k: JoinComplex, m: Monomial, vertex: str) -> bool:
    """Membership of a single monomial in (y_v) + (y_j y_k : j < k)."""
    if m.exponent(k.y_index(vertex)) >= 1:
        return True
    distinct_ys = sum(1 for i in k.graph_generator_indices() if m.exponent(i) >= 1)
    return distinct_ys >= 2
