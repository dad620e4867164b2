"""Opetopes of every dimension as decorated trees, with faces and targets.

An n-opetope for n >= 2 is a tree whose nodes are (n-1)-opetopes and whose
edges are (n-2)-opetopes; dimensions 0 and 1 are the point and the arrow.
A unit tree is a degenerate opetope.  The target of an opetope and the
readdressing bijection from its leaves onto the target's nodes are computed
by flattening the tree one dimension down.

Instances are interned, so equality is pointer identity for values built
through the factory functions here and targets are computed once per
distinct opetope.
"""

from __future__ import annotations

from functools import lru_cache

from .address import EMPTY, Address
from .errors import AddressError, CoherenceError, EnumerationLimit, OpetopicError, Report
from .trees import (
    Signature,
    Tree,
    _substitute_core,
    check_tree,
    corolla,
    flatten,
)

DEFAULT_ENUMERATION_CAP = 500_000


class Opetope:
    """An opetope; use the factory functions, not the constructor."""

    __slots__ = ("_dim", "_tree", "_hash", "_boundary", "_str", "_leaves")

    def __init__(self, dim: int, tree: Tree | None):
        self._dim = dim
        self._tree = tree
        self._hash: int | None = None
        self._boundary: tuple["Opetope", dict[Address, Address]] | None = None
        self._str: str | None = None
        self._leaves: tuple[Address, ...] | None = None

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def tree(self) -> Tree:
        if self._tree is None:
            raise AddressError(f"a {self._dim}-opetope has no underlying tree")
        return self._tree

    @property
    def is_degenerate(self) -> bool:
        return self._tree is not None and self._tree.is_unit

    @property
    def shell(self) -> "Opetope":
        """The opetope decorating the unique edge of a degenerate opetope."""
        if not self.is_degenerate:
            raise AddressError("only degenerate opetopes have a shell")
        return self._tree.unit_color

    def node_addresses(self) -> tuple[Address, ...]:
        """Source addresses: empty in dimension 0, the root alone for the arrow."""
        if self._dim == 0:
            return ()
        if self._dim == 1:
            return (EMPTY,)
        return self._tree.node_addresses()

    def leaf_addresses(self) -> tuple[Address, ...]:
        if self._dim < 2:
            raise AddressError("leaf addresses need dimension >= 2")
        if self._leaves is None:
            from .trees import leaf_addresses

            self._leaves = leaf_addresses(OPETOPE_SIG, self._tree)
        return self._leaves

    def source_at(self, address: Address) -> "Opetope":
        if self._dim == 1:
            if address == EMPTY:
                return point()
            raise AddressError(f"the arrow has no source at {address}")
        if self._dim < 1:
            raise AddressError("the point has no sources")
        return self._tree.decoration(address)

    def target(self) -> "Opetope":
        if self._dim == 0:
            raise AddressError("the point has no target")
        return self._flatten()[0]

    def readdress(self) -> dict[Address, Address]:
        """Bijection from leaf addresses onto the target's node addresses."""
        if self._dim < 2:
            raise AddressError("readdressing needs dimension >= 2")
        return dict(self._flatten()[1])

    def _flatten(self) -> tuple["Opetope", dict[Address, Address]]:
        if self._boundary is None:
            if self._dim == 1:
                self._boundary = (point(), {})
            elif self._dim == 2:
                leaves = self.leaf_addresses()
                self._boundary = (arrow(), {leaves[0]: EMPTY})
            else:
                result = flatten(OPETOPE_SIG, self._tree)
                self._boundary = (from_tree(result.tree), result.readdress)
        return self._boundary

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Opetope):
            return NotImplemented
        return self._dim == other._dim and self._tree == other._tree

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, self._tree))
        return self._hash

    def __str__(self) -> str:
        if self._str is None:
            if self._dim == 0:
                self._str = "point"
            elif self._dim == 1:
                self._str = "arrow"
            elif self.is_degenerate:
                self._str = f"<<{self.shell}>>"
            else:
                bindings = ", ".join(
                    f"{address} <- {self._tree.nodes[address]}"
                    for address in self._tree.node_addresses()
                )
                self._str = "{" + bindings + "}"
        return self._str

    def __repr__(self) -> str:
        return f"Opetope({self})"


_INTERN: dict[Opetope, Opetope] = {}


def _intern(candidate: Opetope) -> Opetope:
    return _INTERN.setdefault(candidate, candidate)


@lru_cache(maxsize=None)
def point() -> Opetope:
    return _intern(Opetope(0, None))


@lru_cache(maxsize=None)
def arrow() -> Opetope:
    return _intern(Opetope(1, None))


def degenerate(shell: Opetope) -> Opetope:
    """The opetope two dimensions above ``shell`` with a bare-edge tree."""
    return _intern(Opetope(shell.dim + 2, Tree.unit(shell)))


def from_tree(tree: Tree, validate: bool = False) -> Opetope:
    """Wrap a tree of (n-1)-opetopes as an n-opetope."""
    if tree.is_unit:
        return degenerate(tree.unit_color)
    dims = {op.dim for op in tree.nodes.values()}
    if len(dims) != 1:
        raise CoherenceError(f"node decorations mix dimensions {sorted(dims)}")
    dim = dims.pop()
    if dim < 1:
        raise CoherenceError("node decorations must have dimension >= 1")
    candidate = Opetope(dim + 1, tree)
    existing = _INTERN.get(candidate)
    if existing is not None:
        return existing
    if validate:
        check_tree(OPETOPE_SIG, tree)
    return _intern(candidate)


def node_map(bindings: dict[Address, Opetope]) -> Opetope:
    """Validated opetope from explicit node bindings (must include the root)."""
    if not bindings:
        raise CoherenceError("a node map must be non-empty; use degenerate() instead")
    return from_tree(Tree.of(bindings), validate=True)


def opetopic_integer(k: int) -> Opetope:
    """The 2-opetope with k source arrows; k = 0 is the degenerate one."""
    if k < 0:
        raise ValueError("opetopic integers are indexed by naturals")
    if k == 0:
        return degenerate(point())
    bindings: dict[Address, Opetope] = {}
    address = EMPTY
    for _ in range(k):
        bindings[address] = arrow()
        address = address.child(EMPTY)
    return from_tree(Tree.of(bindings))


class OpetopeSignature(Signature):
    """Signature whose operations are opetopes one dimension down.

    Works uniformly at every level: inputs of an opetope are its node
    addresses, colors are sources and targets.  Flattening bottoms out at
    the arrow, whose source tree lives nowhere; targets in dimension 2 are
    special-cased in Opetope instead.
    """

    def inputs(self, op: Opetope) -> tuple[Address, ...]:
        return op.node_addresses()

    def source_color(self, op: Opetope, address: Address) -> Opetope:
        return op.source_at(address)

    def target_color(self, op: Opetope) -> Opetope:
        return op.target()

    def source_tree(self, op: Opetope) -> Tree:
        if op.dim < 2:
            raise OpetopicError(
                "flatten is unavailable over arrows; dimension <= 2 targets "
                "are special-cased"
            )
        return op.tree

    def sub_readdress(self, op: Opetope) -> dict[Address, Address]:
        return op.readdress()

    def sub_signature(self) -> "OpetopeSignature":
        return self


OPETOPE_SIG = OpetopeSignature()


def print_key(value) -> tuple[int, str]:
    """Shortlex key on canonical prints; the deterministic output order."""
    text = str(value)
    return (len(text), text)


def check_identities(omega: Opetope) -> Report:
    """Verify the four face identities pointwise on one opetope.

    Inner: the target of the node above an inner edge is the matching
    source of the node below it.  Globularity relates the root and leaf
    faces to the faces of the target; degenerate opetopes satisfy the loop
    identity instead.  This is the master oracle for flatten.
    """
    report = Report()
    if omega.dim < 2:
        report.fail(f"identities need dimension >= 2, got {omega.dim}")
        return report
    target, readdress = omega._flatten()
    if omega.is_degenerate:
        left = target.source_at(EMPTY)
        right = target.target()
        if left != right:
            report.fail(f"degeneracy: s[[]] t = {left} but t t = {right}")
        return report
    # sources of a decoration: its node decorations, or the point below an
    # arrow; parent addresses are tuple slices, valid as dict keys
    def source(op, slot):
        return op.tree.nodes[slot] if op.dim >= 2 else point()

    nodes = omega.tree.nodes
    for address, op in nodes.items():
        if not address:
            continue
        above = op.target()
        below = source(nodes[address[:-1]], address[-1])
        if above != below:
            report.fail(
                f"inner edge {address}: t s[{address}] = {above} "
                f"but s[{address[-1]}] s[{Address(address[:-1])}] = {below}"
            )
    left = nodes[EMPTY].target()
    right = target.target()
    if left != right:
        report.fail(f"globularity (root): t s[[]] = {left} but t t = {right}")
    for leaf, image in readdress.items():
        via_source = source(nodes[leaf[:-1]], leaf[-1])
        via_target = target.tree.nodes[image] if target.dim >= 2 else point()
        if via_source != via_target:
            report.fail(
                f"globularity (leaf {leaf}): s[{leaf[-1]}] "
                f"s[{Address(leaf[:-1])}] = {via_source} "
                f"but s[{image}] t = {via_target}"
            )
    return report


def iter_opetopes(
    n: int,
    max_nodes: int,
    shard: tuple[int, int] | None = None,
    intern_results: bool = True,
):
    """Generate the n-opetopes all of whose iterated faces have at most
    ``max_nodes`` nodes, in a deterministic but unsorted order.

    Trees are grown by grafting corollas at leaves in strictly ascending
    address order, which produces every tree exactly once, and the target
    and readdressing are maintained incrementally (one substitution per
    produced opetope) and cached on the instance.  ``shard = (i, k)``
    restricts to every k-th root choice, for splitting sweeps across
    processes.
    """
    if n < 0:
        raise ValueError("dimension must be a natural number")

    def sharded(index: int) -> bool:
        return shard is None or index % shard[1] == shard[0]

    if n == 0:
        if sharded(0):
            yield point()
        return
    if n == 1:
        if sharded(0):
            yield arrow()
        return
    if n == 2:
        for k in range(max_nodes + 1):
            if sharded(k):
                yield opetopic_integer(k)
        return

    previous = _enumerate_cached(n - 1, max_nodes)
    allowed = frozenset(previous)
    index = 0
    for shell in _enumerate_cached(n - 2, max_nodes):
        if sharded(index):
            omega = degenerate(shell)
            if omega.target() in allowed:
                yield omega
        index += 1

    # per-operation data: underlying tree, input slots with their colors,
    # and the inverted leaf-to-input gluing; candidates bucketed by
    # (target color, input arity) so leaf-count pruning selects buckets
    info = {}
    by_target: dict[Opetope, list[list[Opetope]]] = {}
    for op in previous:
        slots = op.node_addresses()
        inverse = {slot: leaf for leaf, slot in op.readdress().items()}
        info[op] = (
            op.tree,
            tuple((slot, op.source_at(slot)) for slot in slots),
            inverse,
        )
        buckets = by_target.setdefault(op.target(), [])
        while len(buckets) <= len(slots):
            buckets.append([])
        buckets[len(slots)].append(op)

    def make(nodes: dict, result: Tree, rho: dict) -> Opetope:
        omega = Opetope(n, Tree._wrap(nodes))
        if result.is_unit:
            target = degenerate(result.unit_color)
        else:
            candidate = Opetope(n - 1, result)
            target = _INTERN.get(candidate)
            if target is None:
                target = _intern(candidate)
        omega._boundary = (target, rho)
        if intern_results:
            omega = _intern(omega)
        return omega

    def grow(nodes, leaves, last, result, rho):
        budget = max_nodes - len(nodes)
        # adding a node with a inputs leaves at least
        # len(leaves) - 1 + a - (budget - 1) leaves in any completion
        max_arity = max_nodes + budget - len(leaves)
        for leaf in sorted(leaves):
            if not (last < tuple(leaf)):
                continue
            buckets = by_target.get(leaves[leaf])
            if buckets is None:
                continue
            anchor = rho[leaf]
            for arity_ops in buckets[: max_arity + 1]:
                for op in arity_ops:
                    tree, slots, inverse = info[op]
                    new_nodes = dict(nodes)
                    new_nodes[leaf] = op
                    new_result, moves = _substitute_core(
                        result, anchor, tree, inverse
                    )
                    new_rho = {
                        l: moves[node] for l, node in rho.items() if l != leaf
                    }
                    new_leaves = dict(leaves)
                    del new_leaves[leaf]
                    for slot, slot_color in slots:
                        new_rho[leaf.child(slot)] = anchor.concat(slot)
                        new_leaves[leaf.child(slot)] = slot_color
                    if len(new_leaves) <= max_nodes:
                        omega = make(new_nodes, new_result, new_rho)
                        if omega.target() in allowed:
                            yield omega
                    if budget > 1:
                        yield from grow(
                            new_nodes, new_leaves, tuple(leaf), new_result, new_rho
                        )

    for root in previous:
        index += 1
        if not sharded(index):
            continue
        tree, slots, _ = info[root]
        nodes = {EMPTY: root}
        leaves = {EMPTY.child(slot): color for slot, color in slots}
        rho = {EMPTY.child(slot): slot for slot, _ in slots}
        if len(leaves) <= max_nodes:
            omega = make(nodes, tree, rho)
            if omega.target() in allowed:
                yield omega
        if max_nodes > 1:
            yield from grow(nodes, leaves, (), tree, rho)


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, max_nodes: int) -> tuple[Opetope, ...]:
    kept = list(iter_opetopes(n, max_nodes))
    kept.sort(key=print_key)
    return tuple(kept)


def enumerate_opetopes(
    n: int, max_nodes: int, cap: int | None = DEFAULT_ENUMERATION_CAP
) -> list[Opetope]:
    """All n-opetopes every one of whose iterated faces has at most
    ``max_nodes`` nodes, sorted by canonical print, without duplicates."""
    if n < 0:
        raise ValueError("dimension must be a natural number")
    if cap is not None:
        count = 0
        for _ in iter_opetopes(n, max_nodes, intern_results=False):
            count += 1
            if count > cap:
                raise EnumerationLimit(f"more than {cap} opetopes of dimension {n}")
    return list(_enumerate_cached(n, max_nodes))


def rebuild_from_corollas(omega: Opetope) -> Opetope:
    """Reassemble a non-degenerate opetope by grafting corollas of its
    decorations in address order; used as a reconstruction check."""
    from .trees import graft

    if omega.dim < 2 or omega.is_degenerate:
        raise AddressError("reconstruction applies to non-degenerate dim >= 2")
    items = sorted(omega.tree.nodes.items(), key=lambda kv: kv[0])
    tree = corolla(items[0][1])
    for address, decoration in items[1:]:
        tree = graft(OPETOPE_SIG, tree, address, corolla(decoration))
    return from_tree(tree)
