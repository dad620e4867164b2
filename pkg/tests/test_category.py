import pytest

from opetopic.address import EMPTY, Address, parse_address
from opetopic.category import (
    Face,
    compose,
    faces_of,
    hom,
    identity,
    morphism,
    relation_instances,
    words_equal,
)
from opetopic.errors import CompositionError
from opetopic.opetope import (
    arrow,
    enumerate_opetopes,
    opetopic_integer,
    point,
)

STAR = Address((EMPTY,))


def kinds(omega):
    out = {}
    for instance in relation_instances(omega):
        out[instance.kind] = out.get(instance.kind, 0) + 1
    return out


class TestFaces:
    def test_faces_of_arrow(self):
        faces = faces_of(arrow())
        assert [str(f) for f in faces] == ["t", "s[]"]
        assert faces[0].domain == point()
        assert faces[1].domain == point()

    def test_faces_of_integer(self):
        assert [str(f) for f in faces_of(opetopic_integer(2))] == [
            "t",
            "s[]",
            "s[*]",
        ]

    def test_faces_of_degenerate(self):
        assert [str(f) for f in faces_of(opetopic_integer(0))] == ["t"]

    def test_faces_of_point(self):
        assert faces_of(point()) == ()


class TestRelationInstances:
    def test_degenerate_has_one_degen_square(self):
        assert kinds(opetopic_integer(0)) == {"degen": 1}

    def test_counts_follow_the_definition(self):
        # one inner square per non-root node, one root-globularity square,
        # one leaf-globularity square per leaf
        assert kinds(opetopic_integer(1)) == {"glob1": 1, "glob2": 1}
        assert kinds(opetopic_integer(2)) == {
            "glob1": 1,
            "inner": 1,
            "glob2": 1,
        }

    def test_counts_on_enumerated(self):
        for omega in enumerate_opetopes(3, 3):
            expected = {}
            if omega.is_degenerate:
                expected["degen"] = 1
            else:
                expected["glob1"] = 1
                inner = len(omega.node_addresses()) - 1
                if inner:
                    expected["inner"] = inner
                leaves = len(omega.leaf_addresses())
                if leaves:
                    expected["glob2"] = leaves
            assert kinds(omega) == expected

    def test_sides_share_domains(self):
        for omega in enumerate_opetopes(3, 3):
            for instance in relation_instances(omega):
                assert instance.left[1].domain == instance.right[1].domain


class TestEquality:
    def test_glob1(self):
        omega = opetopic_integer(2)
        target = omega.target()
        left = (Face(omega), Face(target))
        right = (Face(omega, EMPTY), Face(omega.source_at(EMPTY)))
        assert words_equal(left, right)

    def test_degen(self):
        omega = opetopic_integer(0)
        target = omega.target()
        assert words_equal(
            (Face(omega), Face(target)),
            (Face(omega), Face(target, EMPTY)),
        )

    def test_glob2(self):
        omega = opetopic_integer(2)
        leaf = parse_address("[**]")
        rho = omega.readdress()
        left = (Face(omega, STAR), Face(omega.source_at(STAR), EMPTY))
        right = (Face(omega), Face(omega.target(), rho[leaf]))
        assert words_equal(left, right)

    def test_canonical_member_is_least(self):
        omega = opetopic_integer(2)
        for cls in hom(point(), omega):
            members = cls.members()
            keyed = sorted(
                members, key=lambda w: tuple(f.sort_key() for f in w)
            )
            assert cls.word == keyed[0]


class TestComposition:
    def test_identity_unit(self):
        omega = opetopic_integer(2)
        f = hom(arrow(), omega)[0]
        assert compose(f, identity(f.domain)) == f
        assert compose(identity(omega), f) == f

    def test_degen_composites_agree(self):
        omega = opetopic_integer(0)
        target = omega.target()
        left = compose(
            morphism(omega, (Face(omega),)), morphism(target, (Face(target),))
        )
        right = compose(
            morphism(omega, (Face(omega),)),
            morphism(target, (Face(target, EMPTY),)),
        )
        assert left == right

    def test_mismatch_rejected(self):
        with pytest.raises(CompositionError):
            compose(
                morphism(opetopic_integer(2), (Face(opetopic_integer(2)),)),
                morphism(opetopic_integer(0), (Face(opetopic_integer(0)),)),
            )

    def test_associative(self):
        from opetopic.opetope import from_tree
        from opetopic.trees import corolla

        omega = from_tree(corolla(opetopic_integer(3)))
        f = morphism(omega, (Face(omega),))
        g = morphism(f.domain, (Face(f.domain),))
        h = morphism(g.domain, (Face(g.domain),))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))

    def test_well_defined_on_representatives(self):
        from opetopic.opetope import from_tree
        from opetopic.trees import corolla

        omega = from_tree(corolla(opetopic_integer(2)))
        for outer in hom(arrow(), omega):
            for inner in hom(point(), outer.domain):
                expected = compose(outer, inner)
                for outer_word in outer.members():
                    for inner_word in inner.members():
                        assert (
                            morphism(omega, outer_word + inner_word) == expected
                        )


def union_find_hom_counts(omega):
    """Independent brute-force quotient: all words at once, one global
    union-find, merging along every relation square at every position."""
    words = [()]
    frontier = [()]
    while frontier:
        word = frontier.pop()
        cod = word[-1].domain if word else omega
        for face in faces_of(cod):
            extended = word + (face,)
            words.append(extended)
            frontier.append(extended)
    index = {word: k for k, word in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for word in words:
        for position in range(len(word) - 1):
            pair = (word[position], word[position + 1])
            for instance in relation_instances(pair[0].codomain):
                other = None
                if instance.left == pair:
                    other = instance.right
                elif instance.right == pair:
                    other = instance.left
                if other is not None:
                    rewritten = (
                        word[:position] + other + word[position + 2 :]
                    )
                    parent[find(index[word])] = find(index[rewritten])
    classes = {}
    for word, k in index.items():
        domain = word[-1].domain if word else omega
        classes.setdefault(domain, set()).add(find(k))
    return {domain: len(roots) for domain, roots in classes.items()}


def edge_count_oracle(omega, phi):
    """Structural count for codimension 2: classes correspond to the edges
    of the tree, counted by their decorating opetope."""
    if omega.is_degenerate:
        colors = [omega.shell]
    else:
        colors = [omega.source_at(EMPTY).target()]
        for address in omega.node_addresses():
            if address != EMPTY:
                colors.append(omega.source_at(address).target())
        for leaf in omega.leaf_addresses():
            p, q = leaf.parent, leaf.last
            colors.append(omega.source_at(p).source_at(q))
    return sum(1 for color in colors if color == phi)


class TestHom:
    def test_point_into_arrow(self):
        assert len(hom(point(), arrow())) == 2

    def test_point_into_degenerate(self):
        assert len(hom(point(), opetopic_integer(0))) == 1

    def test_integers(self):
        for k in range(1, 6):
            omega = opetopic_integer(k)
            assert len(hom(point(), omega)) == k + 1
            assert len(hom(arrow(), omega)) == k + 1

    def test_no_morphisms_downward(self):
        assert hom(opetopic_integer(2), arrow()) == []

    def test_identity_is_the_only_endomorphism(self):
        for omega in enumerate_opetopes(3, 2):
            endos = hom(omega, omega)
            assert len(endos) == 1 and endos[0].is_identity

    def test_matches_union_find_oracle(self):
        for omega in enumerate_opetopes(3, 2):
            oracle = union_find_hom_counts(omega)
            mine = {
                domain: len(hom(domain, omega))
                for domain in oracle
            }
            assert mine == oracle

    def test_codimension_two_matches_edge_count(self):
        for omega in enumerate_opetopes(3, 3):
            for phi in enumerate_opetopes(1, 3):
                assert len(hom(phi, omega)) == edge_count_oracle(omega, phi)
        for k in range(5):
            omega = opetopic_integer(k)
            assert len(hom(point(), omega)) == edge_count_oracle(omega, point())

    def test_deterministic_order(self):
        omega = opetopic_integer(3)
        assert [str(c) for c in hom(point(), omega)] == [
            str(c) for c in hom(point(), omega)
        ]
