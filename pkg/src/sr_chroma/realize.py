"""Sufficiency certificates and the realizability pipeline.

Partitions of the complex's vertex set are checked against prescribed degree
multisets per maximal face (the sufficiency criterion); block-size vectors
are split into a weakly decreasing part plus an odd-slot part to drive the
general construction; degree multisets of maximal faces are tested for
decomposability into the realizable polynomial-algebra degree lists.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .algebra import JoinComplex, x_label, y_label
from .errors import ContractError
from .families import FamilySpec, build_complex
from .graph import Coloring, Graph, chromatic_number, coloring_is_valid
from .span import span_chromatic_number
from .steenrod import necessary_condition


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering the generator set of a join complex."""

    blocks: tuple[frozenset[str], ...]

    def validate_against(self, k: JoinComplex) -> None:
        seen: set[str] = set()
        for block in self.blocks:
            overlap = seen & block
            if overlap:
                raise ContractError(f"partition blocks overlap on {sorted(overlap)}")
            seen |= block
        everything = set(k.gen_labels)
        if seen != everything:
            missing = sorted(everything - seen)
            extra = sorted(seen - everything)
            raise ContractError(f"partition does not cover V(K): missing={missing} extra={extra}")

    def serialize(self, k: JoinComplex) -> str:
        order = k.label_index
        lines = []
        for i, block in enumerate(self.blocks, 1):
            labels = ", ".join(sorted(block, key=order.get))
            lines.append(f"V_{i}: {labels}")
        return "\n".join(lines) + ("\n" if lines else "")


def scheme_multisets(p: int, scheme: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(full, partial) target multisets for the two uniform constructions."""
    if scheme == "A":
        partial = tuple(range(4, 2 * p + 1, 2))
    elif scheme == "B":
        partial = tuple(range(4, 2 * p - 1, 4))
    else:
        raise ContractError(f"unknown scheme {scheme!r}")
    return partial + (2 * p + 2,), partial


def _face_block_multiset(k: JoinComplex, face: frozenset[str], block: frozenset[str]) -> tuple[int, ...]:
    degrees = [k.gen_degrees[k.label_index[lbl]] for lbl in face & block]
    return tuple(sorted(degrees))


def verify_partition(k: JoinComplex, part: Partition, scheme: str) -> bool:
    """Every maximal face must meet every block in the scheme's full multiset,
    its partial version, or not at all."""
    part.validate_against(k)
    p = (k.graph_degree - 2) // 2
    full, partial = scheme_multisets(p, scheme)
    allowed = {full, partial, ()}
    return all(
        _face_block_multiset(k, face, block) in allowed
        for face in k.maximal_faces()
        for block in part.blocks
    )


class DegreeMultisetFamily:
    """Predicate over degree multisets, with candidate blocks for the search."""

    def is_allowed(self, multiset: tuple[int, ...]) -> bool:
        raise NotImplementedError

    def blocks_with_max(self, top: int) -> list[tuple[int, ...]]:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class AndersonGrodalFamily(DegreeMultisetFamily):
    """Degree lists of the realizable integral polynomial algebras: {2},
    the contiguous even chains {4,6,...,2n}, and the chains {4,8,...,4m}."""

    def is_allowed(self, multiset: tuple[int, ...]) -> bool:
        ms = tuple(sorted(multiset))
        if not ms:
            return False
        if ms == (2,):
            return True
        if ms[0] != 4:
            return False
        if ms == tuple(range(4, 4 + 2 * len(ms), 2)):
            return True
        return ms == tuple(range(4, 4 + 4 * len(ms), 4))

    def blocks_with_max(self, top: int) -> list[tuple[int, ...]]:
        if top == 2:
            return [(2,)]
        if top < 4 or top % 2:
            return []
        out = [tuple(range(4, top + 1, 2))]
        if top % 4 == 0:
            chain4 = tuple(range(4, top + 1, 4))
            if chain4 != out[0]:
                out.append(chain4)
        return out

    def describe(self) -> str:
        return "{2}; {4,6,...,2n}; {4,8,...,4m}"


class ExplicitFamily(DegreeMultisetFamily):
    def __init__(self, allowed: tuple[tuple[int, ...], ...]):
        self.allowed = tuple(tuple(sorted(ms)) for ms in allowed)

    def is_allowed(self, multiset: tuple[int, ...]) -> bool:
        return tuple(sorted(multiset)) in self.allowed

    def blocks_with_max(self, top: int) -> list[tuple[int, ...]]:
        return [ms for ms in self.allowed if ms and max(ms) == top]

    def describe(self) -> str:
        return "; ".join("{" + ",".join(map(str, ms)) + "}" for ms in self.allowed)


DEFAULT_FAMILY = AndersonGrodalFamily()


def load_family_file(text: str) -> ExplicitFamily:
    """One allowed multiset per line, comma-separated degrees; `#` comments."""
    allowed = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            allowed.append(tuple(int(x) for x in line.split(",")))
        except ValueError:
            raise ContractError(f"line {lineno}: bad multiset {line!r}") from None
    if not allowed:
        raise ContractError("multiset family file lists no multisets")
    return ExplicitFamily(tuple(allowed))


def multiset_decomposable(
    multiset: tuple[int, ...], family: DegreeMultisetFamily | None = None
) -> tuple[tuple[int, ...], ...] | None:
    """Partition the multiset into allowed blocks (exact, memoized); None if
    impossible. Entries must be positive and even."""
    fam = family if family is not None else DEFAULT_FAMILY
    for entry in multiset:
        if not isinstance(entry, int) or entry <= 0 or entry % 2:
            raise ContractError(f"multiset entries must be positive even integers, got {entry!r}")
    failed: set[tuple[int, ...]] = set()

    def go(counter: Counter) -> tuple[tuple[int, ...], ...] | None:
        if not counter:
            return ()
        key = tuple(sorted(counter.elements()))
        if key in failed:
            return None
        top = max(counter)
        for block in fam.blocks_with_max(top):
            need = Counter(block)
            if any(counter[d] < c for d, c in need.items()):
                continue
            rest = counter - need
            sub = go(rest)
            if sub is not None:
                return (tuple(block),) + sub
        failed.add(key)
        return None

    return go(Counter(multiset))


def partition_from_coloring(k: JoinComplex, c: Coloring, scheme: str) -> Partition:
    """Column i of every block plus the i-th color class, i = 1..n."""
    scheme_multisets((k.graph_degree - 2) // 2, scheme)  # validates the scheme tag
    sizes = {size for size, _ in k.blocks}
    if len(sizes) != 1:
        raise ContractError("the coloring construction needs all block sizes equal")
    n = sizes.pop()
    if not coloring_is_valid(k.graph, c):
        raise ContractError("not a valid coloring of the complex's graph")
    if c.num_colors > n:
        raise ContractError(f"coloring uses bound {c.num_colors} > block size {n}")
    blocks = []
    for i in range(1, n + 1):
        members = {x_label(level, i) for level in range(1, len(k.blocks) + 1)}
        members |= {y_label(v) for v, col in c.assignment.items() if col == i}
        blocks.append(frozenset(members))
    part = Partition(tuple(blocks))
    part.validate_against(k)
    return part


def decompose_s(s: tuple[int, ...], c: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Split s = s' + s'' with s' weakly decreasing and s'' supported on odd
    slots (weakly decreasing there), subject to the tail condition against c;
    odd-slot values are tried in downward lexicographic order and the first
    valid split wins. None only after exhausting every candidate."""
    if c < 0:
        raise ContractError("chromatic bound must be non-negative")
    n = len(s)
    if n == 0:
        raise ContractError("empty size vector")
    odd_slots = list(range(0, n, 2))  # 0-based indices of s_1, s_3, ...

    def candidates(j: int, prev: int, acc: list[int]):
        if j == len(odd_slots):
            yield tuple(acc)
            return
        limit = min(s[odd_slots[j]], prev)
        for v in range(limit, -1, -1):
            acc.append(v)
            yield from candidates(j + 1, v, acc)
            acc.pop()

    for odd_values in candidates(0, max(s, default=0), []):
        s_dprime = [0] * n
        for j, v in zip(odd_slots, odd_values):
            s_dprime[j] = v
        s_prime = [a - b for a, b in zip(s, s_dprime)]
        if any(v < 0 for v in s_prime):
            continue
        if any(s_prime[i] < s_prime[i + 1] for i in range(n - 1)):
            continue
        if n % 2 == 0:
            if s_dprime[n - 2] + s_prime[n - 1] < c:
                continue
        else:
            if s_prime[n - 1] < c:
                continue
        return tuple(s_prime), tuple(s_dprime)
    return None


def validate_decomposition(
    s: tuple[int, ...], s_prime: tuple[int, ...], s_dprime: tuple[int, ...], c: int
) -> None:
    n = len(s)
    if len(s_prime) != n or len(s_dprime) != n:
        raise ContractError("decomposition length mismatch")
    if tuple(a + b for a, b in zip(s_prime, s_dprime)) != tuple(s):
        raise ContractError("s' + s'' does not reconstruct s")
    if any(v < 0 for v in s_prime) or any(v < 0 for v in s_dprime):
        raise ContractError("decomposition entries must be non-negative")
    if any(s_prime[i] < s_prime[i + 1] for i in range(n - 1)):
        raise ContractError("s' must be weakly decreasing")
    if any(s_dprime[i] for i in range(1, n, 2)):
        raise ContractError("s'' must vanish in even slots")
    odd = [s_dprime[i] for i in range(0, n, 2)]
    if any(odd[i] < odd[i + 1] for i in range(len(odd) - 1)):
        raise ContractError("s'' must be weakly decreasing along odd slots")
    if n % 2 == 0:
        if s_dprime[n - 2] + s_prime[n - 1] < c:
            raise ContractError("tail condition s''_{2k-1} + s'_{2k} >= c fails")
    elif s_prime[n - 1] < c:
        raise ContractError("tail condition s'_{2k+1} >= c fails")


class _Allocator:
    """Hands out unused generators per level and unused color classes; the
    construction's subscripts are only counting, so any unused generator of
    the right level serves."""

    def __init__(self, k: JoinComplex, c: Coloring):
        self.pools = {
            level: [x_label(level, i) for i in range(1, size + 1)]
            for level, (size, _) in enumerate(k.blocks, 1)
        }
        self.color_classes = {
            col: [y_label(v) for v in k.graph.vertices if c.assignment[v] == col]
            for col in range(1, c.num_colors + 1)
        }
        self.next_color = 1

    def take(self, levels, colored: bool) -> frozenset[str]:
        members = []
        for level in levels:
            if not self.pools[level]:
                raise ContractError(f"level {level} exhausted during construction")
            members.append(self.pools[level].pop(0))
        if colored:
            if self.next_color not in self.color_classes:
                raise ContractError("color classes exhausted during construction")
            members += self.color_classes.pop(self.next_color)
            self.next_color += 1
        return frozenset(members)

    def exhausted(self) -> bool:
        return all(not pool for pool in self.pools.values()) and not self.color_classes


def partition_from_decomposition(
    k: JoinComplex,
    s_prime: tuple[int, ...],
    s_dprime: tuple[int, ...],
    c: Coloring,
) -> Partition:
    """The case-by-case block lists of the decomposition construction; the
    result is validated structurally and should be re-checked against the
    degree-multiset family by the caller."""
    n = len(k.blocks)
    sizes = tuple(size for size, _ in k.blocks)
    validate_decomposition(sizes, s_prime, s_dprime, c.num_colors)
    if not coloring_is_valid(k.graph, c):
        raise ContractError("not a valid coloring of the complex's graph")
    chi = c.num_colors
    alloc = _Allocator(k, c)
    blocks: list[frozenset[str]] = []

    def prefix_blocks(top_level: int, colored_count: int, uncolored_count: int) -> None:
        levels = list(range(1, top_level + 1))
        for _ in range(colored_count):
            blocks.append(alloc.take(levels, colored=True))
        for _ in range(uncolored_count):
            blocks.append(alloc.take(levels, colored=False))

    def descending_prefixes() -> None:
        for j in range(n - 1, 0, -1):
            prefix_blocks(j, 0, s_prime[j - 1] - s_prime[j])

    def odd_chain(top_odd: int, colored_count: int, uncolored_count: int) -> None:
        levels = list(range(1, top_odd + 1, 2))
        for _ in range(colored_count):
            blocks.append(alloc.take(levels, colored=True))
        for _ in range(uncolored_count):
            blocks.append(alloc.take(levels, colored=False))

    def odd_value(i: int) -> int:  # 1-based slot, 0 past the end
        return s_dprime[i - 1] if 1 <= i <= n else 0

    if n % 2 == 0:
        if s_prime[n - 1] >= chi:
            prefix_blocks(n, chi, s_prime[n - 1] - chi)
            descending_prefixes()
            for j in range(n - 1, 0, -2):
                odd_chain(j, 0, odd_value(j) - odd_value(j + 2))
        else:
            prefix_blocks(n, s_prime[n - 1], 0)
            descending_prefixes()
            colored = chi - s_prime[n - 1]
            odd_chain(n - 1, colored, odd_value(n - 1) - odd_value(n + 1) - colored)
            for j in range(n - 3, 0, -2):
                odd_chain(j, 0, odd_value(j) - odd_value(j + 2))
    else:
        prefix_blocks(n, chi, s_prime[n - 1] - chi)
        descending_prefixes()
        for j in range(n, 0, -2):
            odd_chain(j, 0, odd_value(j) - odd_value(j + 2))

    if not alloc.exhausted():
        raise ContractError("construction left generators unassigned")
    part = Partition(tuple(b for b in blocks if b))
    part.validate_against(k)
    return part


def verify_partition_family(k: JoinComplex, part: Partition, family: DegreeMultisetFamily | None = None) -> bool:
    """Generalized multiset check: every nonempty face/block intersection must
    carry an allowed degree multiset."""
    fam = family if family is not None else DEFAULT_FAMILY
    part.validate_against(k)
    for face in k.maximal_faces():
        for block in part.blocks:
            ms = _face_block_multiset(k, face, block)
            if ms and not fam.is_allowed(ms):
                return False
    return True


def chromatic_bounds(g: Graph, p: int) -> tuple[int, int]:
    """(s_p-chi, chi) sandwich around the topological chromatic numbers."""
    lower, _ = span_chromatic_number(g, p)
    upper, _ = chromatic_number(g)
    assert lower <= upper, "sandwich violated: solver bug"
    return lower, upper


@dataclass
class RealizabilityVerdict:
    status: str  # CertifiedRealizable | CertifiedNotRealizable | Inconclusive
    partition: Partition | None = None
    complex: JoinComplex | None = None
    span_gap: tuple[int, int, int] | None = None  # (p, s_p-chi, bound)
    face: tuple[str, ...] | None = None
    face_multiset: tuple[int, ...] | None = None
    note: str = ""

    def to_text(self) -> str:
        lines = [f"status: {self.status}"]
        if self.span_gap is not None:
            p, value, bound = self.span_gap
            lines.append(f"witness: s_{p}chi={value} > bound={bound}")
        if self.face is not None:
            face = ", ".join(self.face)
            ms = ", ".join(map(str, self.face_multiset))
            lines.append(f"witness: face {{{face}}} with multiset {{{ms}}}")
        if self.partition is not None and self.complex is not None:
            lines.append(self.partition.serialize(self.complex).rstrip("\n"))
        if self.note:
            lines.append(f"note: {self.note}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.span_gap is not None:
            p, value, bound = self.span_gap
            out["witness"] = {"kind": "span_gap", "p": p, "span_chromatic": value, "bound": bound}
        if self.face is not None:
            out["witness"] = {
                "kind": "face_multiset",
                "face": list(self.face),
                "multiset": list(self.face_multiset),
            }
        if self.partition is not None and self.complex is not None:
            order = self.complex.label_index
            out["partition"] = [sorted(b, key=order.get) for b in self.partition.blocks]
        if self.note:
            out["note"] = self.note
        return out


def _translate_partition(part: Partition, mapping: dict[str, str]) -> Partition:
    return Partition(tuple(frozenset(mapping.get(lbl, lbl) for lbl in b) for b in part.blocks))


def sufficiency_partition(
    spec: FamilySpec,
    g: Graph,
    family: DegreeMultisetFamily | None = None,
    scheme: str | None = None,
) -> tuple[Partition, JoinComplex] | None:
    """A verified partition certificate when one of the constructions applies:
    the coloring partition for uniform families with chi <= n, otherwise the
    decomposition construction through the general block shape. None when
    neither applies. Certificates are re-verified before being returned."""
    k = build_complex(spec, g)
    chi, coloring = chromatic_number(g)
    n = spec.uniform_n
    scheme = scheme if scheme is not None else spec.scheme
    if scheme is not None and n is not None and chi <= n:
        part = partition_from_coloring(k, coloring, scheme)
        if not verify_partition(k, part, scheme):
            raise AssertionError("coloring construction failed its own multiset check")
        return part, k
    s_general = spec.general_vector()
    dec = decompose_s(s_general, chi)
    if dec is None:
        return None
    k_general = build_complex(FamilySpec("A", s_general), g)
    part = partition_from_decomposition(k_general, dec[0], dec[1], coloring)
    if k_general.gen_labels != k.gen_labels:
        # B-style block j sits in odd slot 2j-1 of the general shape
        mapping = {}
        for j, (size, _) in enumerate(k.blocks, 1):
            for i in range(1, size + 1):
                mapping[x_label(2 * j - 1, i)] = x_label(j, i)
        part = _translate_partition(part, mapping)
    if not verify_partition_family(k, part, family):
        raise AssertionError("decomposition construction failed the multiset check")
    return part, k


def check_realizable(
    spec: FamilySpec, g: Graph, family: DegreeMultisetFamily | None = None
) -> RealizabilityVerdict:
    """Necessary condition, then per-face multiset decomposability, then the
    sufficiency constructions; anything left over is honestly inconclusive."""
    fam = family if family is not None else DEFAULT_FAMILY
    k = build_complex(spec, g)
    if spec.kind in ("Ap", "Bp", "B"):
        outcome = necessary_condition(spec, g)
        if not outcome.passed:
            return RealizabilityVerdict(
                "CertifiedNotRealizable",
                span_gap=(outcome.p, outcome.span_value, outcome.bound),
                note="no mod-p power-operation action exists",
            )
    cache: dict[tuple[int, ...], bool] = {}
    for face in k.maximal_faces():
        ms = tuple(sorted(k.gen_degrees[k.label_index[lbl]] for lbl in face))
        if not ms:
            continue
        ok = cache.get(ms)
        if ok is None:
            ok = multiset_decomposable(ms, fam) is not None
            cache[ms] = ok
        if not ok:
            return RealizabilityVerdict(
                "CertifiedNotRealizable",
                face=tuple(sorted(face, key=k.label_index.get)),
                face_multiset=ms,
                note="maximal face multiset is not a union of allowed lists",
            )
    certified = sufficiency_partition(spec, g, fam)
    if certified is not None:
        part, _ = certified
        return RealizabilityVerdict("CertifiedRealizable", partition=part, complex=k)
    return RealizabilityVerdict(
        "Inconclusive",
        note="necessary condition passed but no sufficiency certificate applies",
    )
