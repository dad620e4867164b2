import pytest
from hypothesis import given

from opetopic.address import EMPTY, Address, compare, parse_address
from opetopic.errors import ParseError

from conftest import addresses


def nested(address):
    """Oracle view: an address as a plain nested tuple."""
    return tuple(nested(entry) for entry in address)


STAR = Address((EMPTY,))


class TestConcat:
    def test_identity_case(self):
        assert EMPTY.concat(EMPTY) == EMPTY

    def test_base_words(self):
        assert STAR.concat(STAR) == parse_address("[**]")

    def test_sequence_concatenation(self):
        left = parse_address("[[*]]")
        right = parse_address("[[][**]]")
        expected = Address(tuple(left) + tuple(right))
        assert left.concat(right) == expected
        assert str(left.concat(right)) == "[[*][][**]]"

    @given(addresses(), addresses(), addresses())
    def test_associative_with_unit(self, p, q, r):
        assert p.concat(q).concat(r) == p.concat(q.concat(r))
        assert EMPTY.concat(p) == p
        assert p.concat(EMPTY) == p
        assert len(p.concat(q)) == len(p) + len(q)


class TestCompare:
    def test_prefix_before_extension(self):
        assert compare(EMPTY, STAR) == -1

    def test_reflexive(self):
        assert compare(STAR, STAR) == 0

    def test_recursive_lexicographic(self):
        assert compare(parse_address("[[*]]"), parse_address("[[**]]")) == -1

    @given(addresses(), addresses())
    def test_matches_nested_tuple_order(self, p, q):
        if nested(p) < nested(q):
            assert compare(p, q) == -1
        elif nested(p) == nested(q):
            assert compare(p, q) == 0
        else:
            assert compare(p, q) == 1

    @given(addresses(), addresses(), addresses())
    def test_total_order(self, p, q, r):
        assert compare(p, q) == -compare(q, p)
        if compare(p, q) <= 0 and compare(q, r) <= 0:
            assert compare(p, r) <= 0

    def test_sorting_deterministic(self):
        batch = [parse_address(s) for s in ["[[*]]", "[]", "[*]", "[**]", "[[]]"]]
        once = sorted(batch)
        again = sorted(reversed(batch))
        assert once == again
        # [*] and [[]] denote the same value, so it appears twice
        assert [str(a) for a in once] == ["[]", "[*]", "[*]", "[**]", "[[*]]"]


class TestParsePrint:
    def test_empty(self):
        assert parse_address("[]") == EMPTY

    def test_star_sugar(self):
        assert parse_address("[**]") == Address((EMPTY, EMPTY))

    def test_canonical_uses_sugar_only_at_base_level(self):
        value = parse_address("[[*][]]")
        assert parse_address("[[*]*]") == value
        assert str(value) == "[[*][]]"

    def test_base_level_sugar(self):
        assert str(Address((EMPTY, EMPTY))) == "[**]"

    @given(addresses())
    def test_parse_print_roundtrip(self, address):
        assert parse_address(str(address)) == address

    @given(addresses())
    def test_print_parse_idempotent(self, address):
        text = str(address)
        assert str(parse_address(text)) == text

    def test_whitespace_ignored(self):
        assert parse_address(" [ * [ ] ] ") == parse_address("[*[]]")

    @pytest.mark.parametrize("bad", ["", "[", "]", "[*", "[x]", "[]]", "**"])
    def test_errors_report_position(self, bad):
        with pytest.raises(ParseError) as info:
            parse_address(bad)
        assert "expected" in str(info.value)

    def test_error_positions_are_exact(self):
        with pytest.raises(ParseError) as info:
            parse_address("[*x]")
        assert info.value.line == 1
        assert info.value.column == 3


class TestStructure:
    def test_child_and_parent(self):
        address = parse_address("[*[**]]")
        child = address.child(STAR)
        assert child.parent == address
        assert child.last == STAR

    def test_depth(self):
        assert EMPTY.depth() == 0
        assert parse_address("[**]").depth() == 1
        assert parse_address("[[*][]]").depth() == 2

    def test_prefix(self):
        assert EMPTY.is_prefix_of(parse_address("[**]"))
        assert parse_address("[*]").is_prefix_of(parse_address("[**]"))
        assert not parse_address("[[*]]").is_prefix_of(parse_address("[**]"))
