"""The exhaustive action search: refutations, witnesses, caps, determinism."""

from __future__ import annotations

import pytest

from helpers import complete_graph, cycle_graph
from sr_chroma.algebra import FreePolynomialAlgebra
from sr_chroma.errors import ContractError, SearchSpaceExceeded
from sr_chroma.families import FamilySpec, build_complex
from sr_chroma.search import search_action, unknown_entry_blocks
from sr_chroma.steenrod import (
    adem_relation,
    check_ideal_preservation,
    check_relations,
    check_unstability,
    full_adem_relation_set,
)
from sr_chroma.symbolic import SymPoly


def test_sympoly_arithmetic():
    p = 5
    x = SymPoly.var(p, 0)
    y = SymPoly.var(p, 1)
    poly = (x + y) * (x + y.scale(4))  # (x+y)(x-y) = x^2 - y^2
    assert poly == x * x - y * y
    assert poly.substitute({0: 2, 1: 3}).const_value() == (4 - 9) % 5
    partial = poly.substitute({0: 2})
    assert partial.variables() == {1}
    assert not poly.is_const() and poly - poly == SymPoly.const(p, 0)
    assert (poly - poly).is_zero()


def test_exhausted_z3_single_generator():
    amb = FreePolynomialAlgebra((("y", 8),))
    out = search_action(amb, 3)
    assert out.status == "exhausted"
    assert "P^1P^3 = P^4" in out.relativity()
    assert "degree bound 24" in out.relativity()


def test_exhausted_z3_three_generators():
    amb = FreePolynomialAlgebra((("x", 4), ("y1", 8), ("y2", 8)))
    out = search_action(amb, 3)
    assert out.status == "exhausted"


def test_exhausted_z5_no_degree_four():
    # |x1| in {8,...,2p-2} = {8}, |y| = 2p+2 = 12 at p = 5
    amb = FreePolynomialAlgebra((("x1", 8), ("y", 12)))
    out = search_action(amb, 5)
    assert out.status == "exhausted"


def test_found_table_passes_all_checkers_independently():
    amb = FreePolynomialAlgebra((("x", 4),))
    out = search_action(amb, 3)
    assert out.found
    table = out.table
    assert check_relations(table).ok
    assert check_ideal_preservation(table).ok
    assert check_unstability(table).ok
    # P^1(x) = x^2 is the least solution in the fixed value order
    assert str(table.entries[("x", 1)]) == "1*x^2"


def test_search_is_deterministic():
    k = build_complex(FamilySpec("B", (2,)), cycle_graph(4))
    first = search_action(k, 3)
    second = search_action(k, 3)
    assert first.found and second.found
    assert first.table.serialize() == second.table.serialize()
    assert first.nodes == second.nodes


def test_found_on_complex_respects_ideals():
    k = build_complex(FamilySpec("B", (3,)), complete_graph(3))
    out = search_action(k, 3)
    assert out.found
    assert check_ideal_preservation(out.table).ok
    assert check_relations(out.table).ok


def test_node_cap_refusal_carries_estimate():
    amb = FreePolynomialAlgebra((("x", 4),))
    with pytest.raises(SearchSpaceExceeded) as exc:
        search_action(amb, 3, node_cap=1)
    assert exc.value.estimate == 3  # 3^1 coefficient tuples


def test_even_prime_rejected():
    amb = FreePolynomialAlgebra((("x", 4),))
    with pytest.raises(ContractError):
        search_action(amb, 2)


def test_unknown_entries_respect_graph_ideal():
    k = build_complex(FamilySpec("B", (2,)), cycle_graph(4))
    blocks, _ = unknown_entry_blocks(k, 3)
    for block in blocks:
        if block.label.startswith("y_"):
            vertex = block.label[2:]
            y_idx = k.y_index(vertex)
            for m in block.basis:
                ys = [i for i in k.graph_generator_indices() if m.exponent(i)]
                assert m.exponent(y_idx) >= 1 or len(ys) >= 2


def test_full_adem_set_still_finds_hp_infinity_action():
    amb = FreePolynomialAlgebra((("x", 4),))
    rels = full_adem_relation_set(amb, 3, 24)
    assert len(rels) > 1
    out = search_action(amb, 3, relation_set=rels)
    assert out.found
    assert check_relations(out.table, rels).ok


def test_custom_relation_pair():
    amb = FreePolynomialAlgebra((("y", 8),))
    rel = adem_relation(1, 3, 3)
    out = search_action(amb, 3, relation_set=(rel,))
    assert out.status == "exhausted"
    assert out.relation_names == (rel.name,)
