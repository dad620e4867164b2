import random

import pytest
from hypothesis import strategies as st

from opetopic.address import EMPTY, Address
from opetopic.polygraph import MtoPolygraph
from opetopic.trees import Signature, Tree


def addresses(max_entries: int = 3, max_leaves: int = 8):
    return st.recursive(
        st.just(EMPTY),
        lambda inner: st.lists(inner, max_size=max_entries).map(
            lambda entries: Address(tuple(entries))
        ),
        max_leaves=max_leaves,
    )


class ToySignature(Signature):
    """Two colors and a handful of operations, enough to exercise trees.

    ``z`` has no inputs, ``u`` one, ``b`` two; ``w`` crosses from color d
    back to e so color mismatches are constructible.
    """

    SLOT0 = EMPTY
    SLOT1 = Address((EMPTY,))

    TABLE = {
        # op: (input slots, input colors, target color)
        "z": ((), (), "e"),
        "u": ((SLOT0,), ("e",), "e"),
        "b": ((SLOT0, SLOT1), ("e", "e"), "e"),
        "w": ((SLOT0,), ("e",), "d"),
    }

    def inputs(self, op):
        return self.TABLE[op][0]

    def source_color(self, op, address):
        slots, colors, _ = self.TABLE[op]
        return colors[slots.index(address)]

    def target_color(self, op):
        return self.TABLE[op][2]


@pytest.fixture
def toy_sig():
    return ToySignature()


def random_toy_tree(rng: random.Random, sig: ToySignature, size: int) -> Tree:
    """Random tree over the toy signature with exactly ``size`` nodes when
    possible (growth stops early if no leaf remains)."""
    from opetopic.trees import corolla, edge_color, graft, leaf_addresses

    ops = [op for op in sig.TABLE if sig.target_color(op) == "e"]
    tree = corolla(rng.choice(ops))
    while tree.size < size:
        leaves = leaf_addresses(sig, tree)
        if not leaves:
            break
        leaf = rng.choice(leaves)
        color = edge_color(sig, tree, leaf)
        choices = [op for op in sig.TABLE if sig.target_color(op) == color]
        tree = graft(sig, tree, leaf, corolla(rng.choice(choices)))
    return tree


@pytest.fixture
def path_polygraph():
    P = MtoPolygraph()
    for name in "abc":
        P.add_point(name)
    P.add_arrow("f", "a", "b")
    P.add_arrow("g", "b", "c")
    P.add_arrow("h", "a", "c")
    P.add_generator(2, "m", Tree.of({EMPTY: "g", Address((EMPTY,)): "f"}), "h")
    return P


@pytest.fixture
def loop_polygraph():
    P = MtoPolygraph()
    P.add_point("a")
    P.add_arrow("f", "a", "a")
    P.add_generator(2, "m", Tree.of({EMPTY: "f"}), "f")
    return P
