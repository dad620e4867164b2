import pytest

from opetopic.address import EMPTY, Address, parse_address
from opetopic.errors import AddressError, CoherenceError, EnumerationLimit
from opetopic.opetope import (
    OPETOPE_SIG,
    arrow,
    check_identities,
    degenerate,
    enumerate_opetopes,
    from_tree,
    iter_opetopes,
    node_map,
    opetopic_integer,
    point,
    rebuild_from_corollas,
)
from opetopic.trees import corolla, edge_color, graft, leaf_addresses

STAR = Address((EMPTY,))
O2 = opetopic_integer(2)


def addr(text):
    return parse_address(text)


class TestLowDimensional:
    def test_point_and_arrow(self):
        assert point().dim == 0
        assert arrow().dim == 1
        assert arrow().target() == point()
        assert arrow().source_at(EMPTY) == point()

    def test_opetopic_integer_zero_is_degenerate(self):
        assert opetopic_integer(0) == degenerate(point())

    def test_opetopic_integer_one(self):
        assert opetopic_integer(1) == node_map({EMPTY: arrow()})

    def test_opetopic_integer_nodes(self):
        assert opetopic_integer(3).node_addresses() == (
            EMPTY,
            addr("[*]"),
            addr("[**]"),
        )

    def test_degenerate_of_arrow(self):
        omega = degenerate(arrow())
        assert omega.dim == 3
        assert omega.is_degenerate
        assert omega.shell == arrow()


class TestConstruction:
    def test_valid_three_dimensional(self):
        omega = node_map({EMPTY: O2, EMPTY.child(EMPTY): O2})
        assert omega.dim == 3

    def test_inner_coherence_violation(self):
        # at dimension 4 the colors are 2-opetopes, so mismatches exist:
        # the child targets o1 but sits on a slot colored o2
        psi = from_tree(corolla(O2))
        phi = from_tree(corolla(opetopic_integer(1)))
        with pytest.raises(CoherenceError) as info:
            node_map({EMPTY: psi, EMPTY.child(EMPTY): phi})
        message = str(info.value)
        assert "edge mismatch" in message

    def test_orphan_address_rejected(self):
        with pytest.raises(CoherenceError):
            node_map({EMPTY: O2, addr("[[*][]]"): O2})

    def test_empty_bindings_rejected(self):
        with pytest.raises(CoherenceError):
            node_map({})


class TestFaces:
    def test_source_of_integer(self):
        assert opetopic_integer(2).source_at(addr("[*]")) == arrow()

    def test_source_of_degenerate_fails(self):
        with pytest.raises(AddressError):
            opetopic_integer(0).source_at(EMPTY)

    def test_targets_of_integers(self):
        for k in range(7):
            assert opetopic_integer(k).target() == arrow()

    def test_target_of_degenerate_arrow(self):
        assert degenerate(arrow()).target() == opetopic_integer(1)
        assert degenerate(arrow()).readdress() == {EMPTY: EMPTY}

    def test_target_of_corolla(self):
        omega = from_tree(corolla(O2))
        assert omega.target() == O2
        assert omega.readdress() == {
            EMPTY.child(EMPTY): EMPTY,
            EMPTY.child(STAR): STAR,
        }

    def test_target_of_two_node_tree(self):
        omega = node_map({EMPTY: O2, EMPTY.child(EMPTY): O2})
        assert omega.target() == opetopic_integer(3)
        assert omega.readdress() == {
            addr("[[][]]"): EMPTY,
            addr("[[][*]]"): STAR,
            addr("[[*]]"): addr("[**]"),
        }

    def test_dimension_drops_by_one(self):
        for omega in enumerate_opetopes(3, 2):
            assert omega.target().dim == 2


class TestIdentities:
    def test_integer(self):
        assert check_identities(opetopic_integer(5)).ok

    def test_degenerate_branch(self):
        assert check_identities(degenerate(arrow())).ok

    def test_enumerated_four_dimensional(self):
        for omega in enumerate_opetopes(4, 2):
            assert check_identities(omega).ok

    def test_readdress_is_bijective(self):
        for omega in enumerate_opetopes(3, 3):
            rho = omega.readdress()
            assert set(rho) == set(omega.leaf_addresses())
            assert sorted(rho.values()) == sorted(
                omega.target().node_addresses()
            )


def oracle_enumerate(n, max_nodes):
    """Generate-and-filter oracle, independent of the library's growth
    order: breadth-first closure under grafting corollas at any leaf."""
    if n == 0:
        return {point()}
    if n == 1:
        return {arrow()}
    previous = sorted(oracle_enumerate(n - 1, max_nodes), key=str)
    if n == 2:
        return {opetopic_integer(k) for k in range(max_nodes + 1)}
    allowed = set(previous)
    seen = {from_tree(corolla(op)) for op in previous}
    frontier = set(seen)
    while frontier:
        fresh = set()
        for omega in frontier:
            if omega.tree.size >= max_nodes:
                continue
            for leaf in leaf_addresses(OPETOPE_SIG, omega.tree):
                color = edge_color(OPETOPE_SIG, omega.tree, leaf)
                for op in previous:
                    if op.target() != color:
                        continue
                    bigger = from_tree(
                        graft(OPETOPE_SIG, omega.tree, leaf, corolla(op))
                    )
                    if bigger not in seen:
                        fresh.add(bigger)
        seen |= fresh
        frontier = fresh
    out = {
        omega
        for omega in seen
        if len(leaf_addresses(OPETOPE_SIG, omega.tree)) <= max_nodes
        and omega.target() in allowed
    }
    for shell in oracle_enumerate(n - 2, max_nodes):
        candidate = degenerate(shell)
        if candidate.target() in allowed:
            out.add(candidate)
    return out


class TestEnumerate:
    def test_dimension_one(self):
        assert enumerate_opetopes(1, 5) == [arrow()]

    def test_opetopic_integers(self):
        assert enumerate_opetopes(2, 3) == [
            opetopic_integer(0),
            opetopic_integer(1),
            opetopic_integer(2),
            opetopic_integer(3),
        ]

    def test_three_dimensional_count_matches_oracle(self):
        generated = set(enumerate_opetopes(3, 2))
        assert generated == oracle_enumerate(3, 2)
        assert len(generated) == 11

    def test_three_dimensional_bound_three_matches_oracle(self):
        assert set(enumerate_opetopes(3, 3)) == oracle_enumerate(3, 3)

    def test_four_dimensional_matches_oracle(self):
        assert set(enumerate_opetopes(4, 2)) == oracle_enumerate(4, 2)

    def test_deterministic_sorted_output(self):
        first = enumerate_opetopes(3, 3)
        second = enumerate_opetopes(3, 3)
        assert first == second
        keys = [(len(str(w)), str(w)) for w in first]
        assert keys == sorted(keys)
        assert len(set(first)) == len(first)

    def test_face_closure(self):
        allowed = set(enumerate_opetopes(2, 3))
        for omega in enumerate_opetopes(3, 3):
            assert omega.target() in allowed

    def test_cap(self):
        with pytest.raises(EnumerationLimit):
            enumerate_opetopes(3, 3, cap=10)

    def test_shards_partition(self):
        whole = set(iter_opetopes(3, 3))
        pieces = [set(iter_opetopes(3, 3, shard=(i, 3))) for i in range(3)]
        assert set().union(*pieces) == whole
        assert sum(len(p) for p in pieces) == len(whole)


class TestStructure:
    def test_reconstruction_from_corollas(self):
        for omega in enumerate_opetopes(3, 3):
            if omega.is_degenerate:
                continue
            assert rebuild_from_corollas(omega) == omega

    def test_equality_agrees_with_canonical_print(self):
        seen = {}
        for omega in enumerate_opetopes(3, 3):
            text = str(omega)
            assert text not in seen
            seen[text] = omega
        rebuilt = node_map({EMPTY: O2, EMPTY.child(EMPTY): O2})
        other = node_map({EMPTY: O2, EMPTY.child(EMPTY): O2})
        assert rebuilt == other and str(rebuilt) == str(other)

    def test_leaf_count_matches_target_nodes(self):
        for omega in enumerate_opetopes(4, 2):
            assert len(omega.leaf_addresses()) == len(
                omega.target().node_addresses()
            )
