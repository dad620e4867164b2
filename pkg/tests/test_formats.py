from pathlib import Path

import pytest

from opetopic.errors import ParseError
from opetopic.formats import (
    parse_opetope_expr,
    parse_opetope_file,
    parse_oset,
    parse_polygraph,
    print_opetope_file,
    print_oset,
    print_polygraph,
    Scanner,
)
from opetopic.opetope import arrow, degenerate, opetopic_integer, point
from opetopic.oset import validate_oset

GOLDEN = Path(__file__).parent / "golden"


def expr(text):
    scanner = Scanner(text)
    result = parse_opetope_expr(scanner, {})
    assert scanner.at_end()
    return result


class TestOpetopeExpressions:
    def test_constants(self):
        assert expr("point") == point()
        assert expr("arrow") == arrow()

    def test_degenerate(self):
        assert expr("<<point>>") == opetopic_integer(0)
        assert expr("<< arrow >>") == degenerate(arrow())

    def test_node_map(self):
        assert expr("{[] <- arrow, [*] <- arrow}") == opetopic_integer(2)

    def test_star_sugar_accepted(self):
        assert expr("{[] <- arrow, [[]] <- arrow}") == opetopic_integer(2)

    def test_roundtrip_canonical(self):
        for omega in [
            point(),
            arrow(),
            opetopic_integer(0),
            opetopic_integer(3),
            degenerate(arrow()),
        ]:
            assert expr(str(omega)) == omega

    def test_duplicate_binding_reports_both_lines(self):
        text = "{[] <- arrow,\n[] <- arrow}"
        with pytest.raises(ParseError) as info:
            expr(text)
        assert "lines 1 and 2" in str(info.value)

    def test_unknown_name(self):
        with pytest.raises(ParseError) as info:
            expr("mystery")
        assert "mystery" in str(info.value)

    def test_incoherent_expression_rejected(self):
        from opetopic.errors import CoherenceError

        with pytest.raises(CoherenceError):
            expr("{[] <- {[] <- {[] <- arrow, [*] <- arrow}}, [[]] <- {[] <- {[] <- arrow}}}")


class TestOpetopeFiles:
    def test_definitions_see_earlier_names(self):
        from opetopic.address import EMPTY

        env = parse_opetope_file(
            "opetope two = {[] <- arrow, [*] <- arrow}\n"
            "opetope tower = {[] <- two, [[]] <- two}\n"
        )
        assert list(env) == ["two", "tower"]
        assert env["tower"].dim == 3
        assert env["tower"].source_at(EMPTY) == env["two"]

    def test_redefinition_rejected(self):
        with pytest.raises(ParseError):
            parse_opetope_file("opetope x = point\nopetope x = arrow\n")

    def test_print_parse_identity(self):
        env = parse_opetope_file((GOLDEN / "shapes.optp").read_text())
        canonical = print_opetope_file(env)
        assert parse_opetope_file(canonical) == env
        assert print_opetope_file(parse_opetope_file(canonical)) == canonical


class TestPolygraphFiles:
    def test_parse_and_validate(self):
        P = parse_polygraph((GOLDEN / "path.poly").read_text())
        assert P.validate().ok
        assert P.generators(2) == ("m",)

    def test_identity_source_form(self):
        P = parse_polygraph((GOLDEN / "loop.poly").read_text())
        assert P.validate().ok
        assert P.gen_data(2, "u").source_tree.is_unit

    def test_duplicate_generator_rejected(self):
        from opetopic.errors import CoherenceError

        with pytest.raises(CoherenceError):
            parse_polygraph("gen 0 a\ngen 0 a\n")

    def test_parse_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_polygraph("gen 1 f : a\n")
        assert info.value.line is not None
        assert "'->'" in str(info.value)


class TestOSetFiles:
    def test_parse_and_validate(self):
        X = parse_oset((GOLDEN / "cells.oset").read_text())
        assert validate_oset(X).ok

    def test_face_block_must_be_complete(self):
        with pytest.raises(ParseError) as info:
            parse_oset("cell f : arrow { t <- x }\n")
        assert "missing faces" in str(info.value)

    def test_spurious_face_rejected(self):
        text = "cell p : point\ncell q : point\ncell f : arrow { t <- p, s [] <- q, s [*] <- q }\n"
        with pytest.raises(ParseError) as info:
            parse_oset(text)
        assert "not a node address" in str(info.value)

    def test_duplicate_face_rejected(self):
        text = "cell p : point\ncell f : arrow { t <- p, s [] <- p, t <- p }\n"
        with pytest.raises(ParseError) as info:
            parse_oset(text)
        assert "assigned twice" in str(info.value)

    def test_dim_zero_cells_have_no_block(self):
        X = parse_oset("cell p : point\n")
        assert X.cells_at(point()) == ["p"]


class TestGoldenCorpus:
    @pytest.mark.parametrize(
        "name", ["path.poly", "loop.poly", "shapes.optp", "cells.oset"]
    )
    def test_canonical_files_are_stable(self, name):
        source = (GOLDEN / name).read_text()
        canonical = (GOLDEN / f"{name}.canonical").read_text()
        if name.endswith(".poly"):
            printed = print_polygraph(parse_polygraph(source))
            again = print_polygraph(parse_polygraph(canonical))
        elif name.endswith(".oset"):
            printed = print_oset(parse_oset(source))
            again = print_oset(parse_oset(canonical))
        else:
            printed = print_opetope_file(parse_opetope_file(source))
            again = print_opetope_file(parse_opetope_file(canonical))
        assert printed == canonical
        assert again == canonical
