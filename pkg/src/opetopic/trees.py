"""Decorated trees over a graded signature.

This is the shared kernel behind opetopes (signature = opetopes one
dimension down) and polygraph cells (signature = the generator signature of
a stage).  A tree is either a bare edge carrying a color, or a finite map
from node addresses to operations.  The map encoding makes grafting and
substitution pure address bookkeeping:

* grafting attaches a tree to a leaf, prefixing its addresses by the leaf;
* substitution replaces one node by a whole tree, rerouting the addresses
  that passed through the removed node along a gluing bijection;
* ``flatten`` contracts a tree of operations into a single composite one
  level down, keeping track of where each leaf ends up (the readdressing
  map).  This is the structure map that computes opetope targets and
  polygraph cell sources.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from .address import EMPTY, Address
from .errors import (
    AddressError,
    CoherenceError,
    EnumerationLimit,
    GraftError,
    OpetopicError,
)

Color = Hashable
Operation = Hashable


class Signature(ABC):
    """What trees need to know about their node decorations.

    ``inputs`` lists the slots of an operation as addresses, ``source_color``
    and ``target_color`` give the edge colors around it.  Signatures whose
    operations are themselves built from trees one level down additionally
    provide ``source_tree``, ``sub_readdress`` (a bijection from the leaves
    of that tree to the inputs of the operation's target), and the
    ``sub_signature`` those trees live over; this is what ``flatten`` needs.
    """

    @abstractmethod
    def inputs(self, op: Operation) -> tuple[Address, ...]: ...

    @abstractmethod
    def source_color(self, op: Operation, address: Address) -> Color: ...

    @abstractmethod
    def target_color(self, op: Operation) -> Color: ...

    def source_tree(self, op: Operation) -> "Tree":
        raise OpetopicError(
            f"signature {type(self).__name__} has no level-down structure; "
            "flatten is unavailable at the base level"
        )

    def sub_readdress(self, op: Operation) -> dict[Address, Address]:
        raise OpetopicError(
            f"signature {type(self).__name__} has no level-down structure"
        )

    def sub_signature(self) -> "Signature":
        raise OpetopicError(
            f"signature {type(self).__name__} has no level-down structure"
        )


class Tree:
    """An immutable decorated tree: a bare edge or a node-address map.

    A node map always contains the root address ``[]``; every other key is
    parent-address plus one input of the parent's decoration.
    """

    __slots__ = ("_unit", "_nodes", "_hash", "_sorted")

    def __init__(self, unit: Color | None, nodes: Mapping[Address, Operation] | None):
        if (unit is None) == (nodes is None):
            raise ValueError("a tree is either a unit edge or a node map")
        if nodes is not None and EMPTY not in nodes:
            raise CoherenceError("a node map must contain the root address []")
        self._unit = unit
        self._nodes = dict(nodes) if nodes is not None else None
        self._hash: int | None = None
        self._sorted: tuple[Address, ...] | None = None

    @staticmethod
    def unit(color: Color) -> "Tree":
        return Tree(color, None)

    @staticmethod
    def of(nodes: Mapping[Address, Operation]) -> "Tree":
        return Tree(None, nodes)

    @staticmethod
    def _wrap(nodes: dict) -> "Tree":
        """Adopt a freshly built dict without copying; internal fast path."""
        tree = object.__new__(Tree)
        tree._unit = None
        tree._nodes = nodes
        tree._hash = None
        tree._sorted = None
        return tree

    @property
    def is_unit(self) -> bool:
        return self._nodes is None

    @property
    def unit_color(self) -> Color:
        if self._nodes is not None:
            raise AddressError("not a unit tree")
        return self._unit

    @property
    def nodes(self) -> dict[Address, Operation]:
        if self._nodes is None:
            raise AddressError("a unit tree has no nodes")
        return self._nodes

    def node_addresses(self) -> tuple[Address, ...]:
        if self._sorted is None:
            if self._nodes is None:
                self._sorted = ()
            else:
                self._sorted = tuple(sorted(self._nodes))
        return self._sorted

    def decoration(self, address: Address) -> Operation:
        if self._nodes is None or address not in self._nodes:
            raise AddressError(f"no node at address {address}")
        return self._nodes[address]

    @property
    def size(self) -> int:
        return 0 if self._nodes is None else len(self._nodes)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self._unit == other._unit and self._nodes == other._nodes

    def __hash__(self) -> int:
        if self._hash is None:
            if self._nodes is None:
                self._hash = hash(("unit", self._unit))
            else:
                nodes = self._nodes
                self._hash = hash(
                    tuple((a, nodes[a]) for a in self.node_addresses())
                )
        return self._hash

    def __repr__(self) -> str:
        if self._nodes is None:
            return f"Tree.unit({self._unit!r})"
        items = ", ".join(f"{a}: {op!r}" for a, op in sorted(self._nodes.items()))
        return "Tree.of({" + items + "})"


def unit_tree(color: Color) -> Tree:
    return Tree.unit(color)


def corolla(op: Operation) -> Tree:
    """The one-node tree decorated by ``op``."""
    return Tree.of({EMPTY: op})


def node_addresses(tree: Tree) -> tuple[Address, ...]:
    return tree.node_addresses()


def leaf_addresses(sig: Signature, tree: Tree) -> tuple[Address, ...]:
    """Addresses of input slots not occupied by a node; ``([],)`` for a unit."""
    if tree.is_unit:
        return (EMPTY,)
    nodes = tree.nodes
    leaves = []
    for p, op in nodes.items():
        for q in sig.inputs(op):
            a = p.child(q)
            if a not in nodes:
                leaves.append(a)
    return tuple(sorted(leaves))


def decoration_at(tree: Tree, address: Address) -> Operation:
    return tree.decoration(address)


def edge_color(sig: Signature, tree: Tree, address: Address) -> Color:
    """Color of the edge at ``address``: the root edge or an input slot."""
    if tree.is_unit:
        if address == EMPTY:
            return tree.unit_color
        raise AddressError(f"a unit tree has no edge at {address}")
    if address == EMPTY:
        return sig.target_color(tree.nodes[EMPTY])
    p, q = address.parent, address.last
    if p not in tree.nodes:
        raise AddressError(f"no node at address {p}")
    op = tree.nodes[p]
    if q not in sig.inputs(op):
        raise AddressError(f"{q} is not an input of the node at {p}")
    return sig.source_color(op, q)


def check_tree(sig: Signature, tree: Tree) -> None:
    """Raise CoherenceError unless the tree condition and coherence hold."""
    if tree.is_unit:
        return
    nodes = tree.nodes
    for p, op in nodes.items():
        if p == EMPTY:
            continue
        parent, slot = p.parent, p.last
        if parent not in nodes:
            raise CoherenceError(f"orphan node at {p}: parent {parent} is missing")
        parent_op = nodes[parent]
        if slot not in sig.inputs(parent_op):
            raise CoherenceError(
                f"node at {p} sits on {slot}, not an input of the node at {parent}"
            )
        got = sig.target_color(op)
        wanted = sig.source_color(parent_op, slot)
        if got != wanted:
            raise CoherenceError(
                f"edge mismatch at {p}: decoration targets {got!r} "
                f"but the slot expects {wanted!r}"
            )


def graft(sig: Signature, base: Tree, leaf: Address, scion: Tree) -> Tree:
    """Attach ``scion`` onto the leaf of ``base`` at ``leaf``.

    New node addresses are ``leaf`` followed by the scion address; grafting
    a unit returns the other tree unchanged.
    """
    if base.is_unit:
        if leaf != EMPTY:
            raise GraftError(f"a unit tree has no leaf at {leaf}")
        _check_graft_colors(sig, base, leaf, scion)
        return scion
    if leaf not in set(leaf_addresses(sig, base)):
        raise GraftError(f"{leaf} is not a leaf of the base tree")
    _check_graft_colors(sig, base, leaf, scion)
    if scion.is_unit:
        return base
    merged = dict(base.nodes)
    for p, op in scion.nodes.items():
        merged[leaf.concat(p)] = op
    return Tree.of(merged)


def _check_graft_colors(sig: Signature, base: Tree, leaf: Address, scion: Tree) -> None:
    base_color = edge_color(sig, base, leaf)
    scion_color = edge_color(sig, scion, EMPTY)
    if base_color != scion_color:
        raise GraftError(
            f"cannot graft at {leaf}: leaf color {base_color!r} "
            f"!= root color {scion_color!r}"
        )


def total_graft(sig: Signature, base: Tree, assignment: Mapping[Address, Tree]) -> Tree:
    """Graft one tree onto every leaf; the order is immaterial."""
    leaves = set(leaf_addresses(sig, base))
    if set(assignment) != leaves:
        missing = sorted(leaves - set(assignment))
        extra = sorted(set(assignment) - leaves)
        parts = []
        if missing:
            parts.append("missing leaves " + ", ".join(map(str, missing)))
        if extra:
            parts.append("spurious leaves " + ", ".join(map(str, extra)))
        raise GraftError("total grafting: " + "; ".join(parts))
    result = base
    for leaf in sorted(assignment, reverse=True):
        result = graft(sig, result, leaf, assignment[leaf])
    return result


def subtree_at(sig: Signature, tree: Tree, edge: Address) -> Tree:
    """The full subtree hanging at an edge, translated to root position."""
    color = edge_color(sig, tree, edge)
    if tree.is_unit:
        return tree
    k = len(edge)
    picked = {
        Address(p[k:]): op
        for p, op in tree.nodes.items()
        if edge.is_prefix_of(p)
    }
    if not picked:
        return Tree.unit(color)
    return Tree.of(picked)


@dataclass(frozen=True)
class SubtreeDecomposition:
    """A tree cut as outer part, inner subtree, and one branch per inner leaf."""

    outer: Tree
    hole: Address
    branches: dict[Address, Tree]

    def reassemble(self, sig: Signature, inner: Tree) -> Tree:
        glued = graft(sig, self.outer, self.hole, inner)
        result = glued
        for leaf in sorted(self.branches, reverse=True):
            result = graft(sig, result, self.hole.concat(leaf), self.branches[leaf])
        return result


def subtree_decomposition(
    sig: Signature, whole: Tree, root_edge: Address, inner: Tree
) -> SubtreeDecomposition:
    """Exhibit ``inner`` (translated by ``root_edge``) as a subtree of ``whole``.

    Raises GraftError naming the first mismatching address when the inner
    tree does not embed there.
    """
    if inner.is_unit:
        expected = edge_color(sig, whole, root_edge)
        if inner.unit_color != expected:
            raise GraftError(
                f"not a subtree: unit color {inner.unit_color!r} vs edge "
                f"{root_edge} colored {expected!r}"
            )
        inner_nodes: dict[Address, Operation] = {}
    else:
        if whole.is_unit:
            raise GraftError("not a subtree: the outer tree has no nodes")
        inner_nodes = inner.nodes
        for p in sorted(inner_nodes):
            translated = root_edge.concat(p)
            if translated not in whole.nodes:
                raise GraftError(f"not a subtree: no node at {translated}")
            if whole.nodes[translated] != inner_nodes[p]:
                raise GraftError(f"not a subtree: decoration differs at {translated}")
    if whole.is_unit:
        outer: Tree = whole
    else:
        outer_nodes = {
            p: op
            for p, op in whole.nodes.items()
            if not root_edge.is_prefix_of(p)
        }
        if outer_nodes:
            outer = Tree.of(outer_nodes)
        else:
            outer = Tree.unit(edge_color(sig, whole, root_edge))
    branches: dict[Address, Tree] = {}
    if not inner.is_unit:
        for leaf in leaf_addresses(sig, inner):
            branches[leaf] = subtree_at(sig, whole, root_edge.concat(leaf))
    else:
        branches[EMPTY] = subtree_at(sig, whole, root_edge)
    return SubtreeDecomposition(outer=outer, hole=root_edge, branches=branches)


def substitute(
    sig: Signature,
    outer: Tree,
    at: Address,
    inner: Tree,
    glue: Mapping[Address, Address],
) -> tuple[Tree, dict[Address, Address]]:
    """Replace the node of ``outer`` at ``at`` by the whole tree ``inner``.

    ``glue`` matches each leaf address of ``inner`` with an input of the
    removed operation; nodes of ``outer`` that sat above the removed node
    through input ``q`` are rerouted through the leaf ``glue^-1(q)``.
    Returns the new tree and the map sending each surviving node of
    ``outer`` to its new address.  Substituting a unit splices the removed
    node out entirely.
    """
    if outer.is_unit:
        raise AddressError("cannot substitute into a unit tree")
    nodes = outer.nodes
    if at not in nodes:
        raise AddressError(f"no node at address {at}")
    removed = nodes[at]
    slots = sig.inputs(removed)
    inverse: dict[Address, Address] = {}
    for leaf, slot in glue.items():
        if slot in inverse:
            raise GraftError(f"gluing is not injective at input {slot}")
        inverse[slot] = leaf
    if set(inverse) != set(slots):
        raise GraftError(
            "gluing does not match the inputs of the removed node: "
            f"{sorted(map(str, inverse))} vs {sorted(map(str, slots))}"
        )
    return _substitute_core(outer, at, inner, inverse)


def _substitute_core(
    outer: Tree,
    at: Address,
    inner: Tree,
    inverse: Mapping[Address, Address],
) -> tuple[Tree, dict[Address, Address]]:
    """Substitution with a pre-inverted, pre-validated gluing."""
    moves: dict[Address, Address] = {}
    out: dict[Address, Operation] = {}
    k = len(at)
    head = tuple(at)
    for p, op in outer.nodes.items():
        if len(p) > k and p[:k] == head:
            q = Address(head + tuple(inverse[p[k]]) + tuple(p[k + 1 :]))
            moves[p] = q
            out[q] = op
        elif p != at:
            moves[p] = p
            out[p] = op
    if not inner.is_unit:
        for v, op in inner.nodes.items():
            out[Address(head + tuple(v))] = op
    if not out:
        return Tree.unit(inner.unit_color), moves
    return Tree._wrap(out), moves


@dataclass(frozen=True)
class FlattenResult:
    tree: Tree
    readdress: dict[Address, Address]


def flatten(sig: Signature, tree: Tree) -> FlattenResult:
    """Contract a tree of operations into one composite a level down.

    The unit on a color becomes the corolla at that color; a corolla
    becomes its operation's source tree; each further node substitutes its
    source tree into the partial result at the node its attachment leaf
    readdresses to.  The returned map is a bijection from the leaves of the
    input onto the nodes of the result.
    """
    sub = sig.sub_signature()
    if tree.is_unit:
        return FlattenResult(corolla(tree.unit_color), {EMPTY: EMPTY})
    items = sorted(tree.nodes.items(), key=lambda kv: kv[0])
    root_addr, root_op = items[0]
    if root_addr != EMPTY:
        raise CoherenceError("node map does not contain the root address")
    result = sig.source_tree(root_op)
    rho = {EMPTY.child(e): e for e in sig.inputs(root_op)}
    for p, op in items[1:]:
        if p not in rho:
            raise CoherenceError(f"node at {p} is not attached to a leaf")
        r = rho.pop(p)
        inner = sig.source_tree(op)
        glue = sig.sub_readdress(op)
        result, moves = substitute(sub, result, r, inner, glue)
        rho = {leaf: moves[node] for leaf, node in rho.items()}
        for e in sig.inputs(op):
            rho[p.child(e)] = r.concat(e)
    result_nodes = set(result.nodes) if not result.is_unit else set()
    if set(rho.values()) != result_nodes or len(rho) != len(result_nodes):
        raise CoherenceError("flatten readdressing failed to be a bijection")
    return FlattenResult(result, rho)


def enumerate_trees(
    sig: Signature,
    operations: Iterable[Operation],
    max_nodes: int,
    *,
    max_leaves: int | None = None,
    sort_key: Callable[[Any], Any] = str,
    cap: int | None = None,
) -> list[Tree]:
    """All node-map trees with 1..max_nodes nodes decorated from ``operations``.

    Deterministic: operations are tried in ``sort_key`` order and results
    come out in generation order (root operation first, then sizes).  The
    optional ``max_leaves`` bound prunes shapes that cannot stay under it.
    """
    ops = sorted(operations, key=sort_key)
    by_target: dict[Color, list[Operation]] = {}
    for op in ops:
        by_target.setdefault(sig.target_color(op), []).append(op)

    memo: dict[tuple[Color, int], list[tuple[dict, int]]] = {}

    def exact(color: Color, k: int) -> list[tuple[dict, int]]:
        """Trees with root color ``color`` and exactly k nodes, with leaf counts."""
        key = (color, k)
        if key in memo:
            return memo[key]
        results: list[tuple[dict, int]] = []
        for op in by_target.get(color, ()):
            slots = sig.inputs(op)
            arity = len(slots)
            budget = k - 1
            if budget == 0:
                if max_leaves is None or arity <= max_leaves:
                    results.append(({EMPTY: op}, arity))
                continue
            if arity == 0:
                continue
            for sizes in _compositions(budget, arity):
                choices: list[list[tuple[dict | None, int]]] = []
                feasible = True
                for slot, size in zip(slots, sizes):
                    if size == 0:
                        choices.append([(None, 1)])
                    else:
                        subs = exact(sig.source_color(op, slot), size)
                        if not subs:
                            feasible = False
                            break
                        choices.append([(t, l) for t, l in subs])
                if not feasible:
                    continue
                for combo in _product(choices):
                    leaves = sum(l for _, l in combo)
                    if max_leaves is not None and leaves > max_leaves:
                        continue
                    nodes = {EMPTY: op}
                    for slot, (subnodes, _) in zip(slots, combo):
                        if subnodes is None:
                            continue
                        prefix = EMPTY.child(slot)
                        for p, sub_op in subnodes.items():
                            nodes[prefix.concat(p)] = sub_op
                    results.append((nodes, leaves))
        memo[key] = results
        return results

    colors = sorted({sig.target_color(op) for op in ops}, key=sort_key)
    out: list[Tree] = []
    for k in range(1, max_nodes + 1):
        for color in colors:
            for nodes, leaves in exact(color, k):
                if max_leaves is not None and leaves > max_leaves:
                    continue
                out.append(Tree.of(nodes))
                if cap is not None and len(out) > cap:
                    raise EnumerationLimit(
                        f"tree enumeration exceeded the cap of {cap}"
                    )
    return out


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ways to write ``total`` as an ordered sum of ``parts`` naturals."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _product(choices: list[list]) -> Iterator[tuple]:
    if not choices:
        yield ()
        return
    head, *tail = choices
    for item in head:
        for rest in _product(tail):
            yield (item,) + rest
