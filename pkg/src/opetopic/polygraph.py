"""Many-to-one polygraphs with cells kept in composition-tree normal form.

A presentation lists generator names per dimension: a 1-generator carries
its endpoint 0-generators, and an n-generator for n >= 2 carries the tree
of (n-1)-generators composing its source together with the single
(n-1)-generator that is its target.  A cell of dimension n is nothing but
a tree over the stage-n generator signature: the unit tree on a generator
is an identity cell, a node map is a composite, and the tree is its own
normal form, so there is no separate word problem to solve.

Sources of cells are computed by the same flattening algorithm that
computes opetope targets; partial composition is grafting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .address import EMPTY, Address
from .errors import (
    AddressError,
    CoherenceError,
    CompositionError,
    Report,
    UnknownNameError,
)
from .trees import (
    Signature,
    Tree,
    check_tree,
    corolla,
    edge_color,
    enumerate_trees,
    flatten,
    graft,
    leaf_addresses,
)


@dataclass(frozen=True)
class Gen1:
    """A 1-generator: an arrow between two 0-generators."""

    source: str
    target: str


@dataclass(frozen=True)
class GenN:
    """An n-generator, n >= 2: a source composition tree and a target name."""

    source_tree: Tree
    target: str


@dataclass(frozen=True)
class Cell:
    """A many-to-one cell: its dimension and its composition tree."""

    dim: int
    tree: Tree

    @property
    def is_identity(self) -> bool:
        return self.tree.is_unit

    def __str__(self) -> str:
        return print_cell_tree(self.tree)


def print_cell_tree(tree: Tree) -> str:
    if tree.is_unit:
        return f"id({tree.unit_color})"
    bindings = ", ".join(
        f"{address} <- {tree.nodes[address]}" for address in tree.node_addresses()
    )
    return "{" + bindings + "}"


@dataclass(frozen=True)
class Occurrence:
    """One generator occurrence inside a cell: an irreducible context."""

    address: Address
    generator: str


class StageSignature(Signature):
    """Signature of dimension-n cells of a polygraph.

    Colors are the (n-1)-generators, operations the n-generators; the
    inputs of an n-generator are the node addresses of its source tree
    (the single root slot for n = 1).  The gluing map needed by flatten is
    itself computed one dimension down, bottoming out at n = 2 where every
    source tree is a line with a single leaf.
    """

    def __init__(self, polygraph: "MtoPolygraph", dim: int):
        self.polygraph = polygraph
        self.dim = dim

    def inputs(self, op: str) -> tuple[Address, ...]:
        if self.dim == 1:
            return (EMPTY,)
        return self.polygraph.gen_data(self.dim, op).source_tree.node_addresses()

    def source_color(self, op: str, address: Address) -> str:
        if self.dim == 1:
            if address != EMPTY:
                raise AddressError(f"a 1-generator has one input, not {address}")
            return self.polygraph.gen_data(1, op).source
        return self.polygraph.gen_data(self.dim, op).source_tree.decoration(address)

    def target_color(self, op: str) -> str:
        return self.polygraph.gen_data(self.dim, op).target

    def source_tree(self, op: str) -> Tree:
        if self.dim < 2:
            raise CoherenceError("1-generators have no source tree")
        return self.polygraph.gen_data(self.dim, op).source_tree

    def sub_readdress(self, op: str) -> dict[Address, Address]:
        return self.polygraph._sub_readdress(self.dim, op)

    def sub_signature(self) -> "StageSignature":
        return self.polygraph.stage(self.dim - 1)


class MtoPolygraph:
    """A finite many-to-one polygraph presentation.

    Generator names live in per-dimension namespaces.  The representation
    makes many-to-one-ness structural: targets are generator names, never
    composites.
    """

    def __init__(self) -> None:
        self._dims: list[dict[str, Union[None, Gen1, GenN]]] = []
        self._stages: dict[int, StageSignature] = {}
        self._readdress_cache: dict[tuple[int, str], dict[Address, Address]] = {}

    # -- construction -------------------------------------------------

    def _namespace(self, dim: int) -> dict:
        while len(self._dims) <= dim:
            self._dims.append({})
        return self._dims[dim]

    def _declare(self, dim: int, name: str) -> dict:
        space = self._namespace(dim)
        if name in space:
            raise CoherenceError(f"duplicate {dim}-generator {name!r}")
        return space

    def add_point(self, name: str) -> None:
        self._declare(0, name)[name] = None

    def add_arrow(self, name: str, source: str, target: str) -> None:
        self._declare(1, name)[name] = Gen1(source, target)

    def add_generator(self, dim: int, name: str, source_tree: Tree, target: str) -> None:
        if dim < 2:
            raise ValueError("use add_point or add_arrow below dimension 2")
        self._declare(dim, name)[name] = GenN(source_tree, target)

    # -- lookups ------------------------------------------------------

    @property
    def max_dim(self) -> int:
        return len(self._dims) - 1

    def generators(self, dim: int) -> tuple[str, ...]:
        if dim < 0 or dim >= len(self._dims):
            return ()
        return tuple(self._dims[dim])

    def has_generator(self, dim: int, name: str) -> bool:
        return 0 <= dim < len(self._dims) and name in self._dims[dim]

    def gen_data(self, dim: int, name: str):
        if not self.has_generator(dim, name):
            raise UnknownNameError(f"no {dim}-generator named {name!r}")
        return self._dims[dim][name]

    def stage(self, dim: int) -> StageSignature:
        if dim < 1:
            raise ValueError("cell signatures start at dimension 1")
        if dim not in self._stages:
            self._stages[dim] = StageSignature(self, dim)
        return self._stages[dim]

    def _sub_readdress(self, dim: int, op: str) -> dict[Address, Address]:
        key = (dim, op)
        if key not in self._readdress_cache:
            tree = self.gen_data(dim, op).source_tree
            if dim == 2:
                leaves = leaf_addresses(self.stage(1), tree)
                self._readdress_cache[key] = {leaves[0]: EMPTY}
            else:
                self._readdress_cache[key] = flatten(
                    self.stage(dim - 1), tree
                ).readdress
        return self._readdress_cache[key]

    # -- cells --------------------------------------------------------

    def identity_cell(self, gen_dim: int, name: str) -> Cell:
        """The identity on a generator, one dimension up."""
        self.gen_data(gen_dim, name)
        return Cell(gen_dim + 1, Tree.unit(name))

    def generator_cell(self, dim: int, name: str) -> Cell:
        self.gen_data(dim, name)
        return Cell(dim, corolla(name))

    def source_cell(self, cell: Cell) -> Union[Cell, str]:
        """The source boundary: a cell one dimension down (a 0-generator
        name for 1-dimensional cells)."""
        if cell.dim == 1:
            if cell.tree.is_unit:
                return cell.tree.unit_color
            deepest = max(cell.tree.nodes)
            return self.gen_data(1, cell.tree.nodes[deepest]).source
        result = flatten(self.stage(cell.dim), cell.tree)
        return Cell(cell.dim - 1, result.tree)

    def target_name(self, cell: Cell) -> str:
        """The target boundary, always a single generator name."""
        if cell.tree.is_unit:
            return cell.tree.unit_color
        root = cell.tree.nodes[EMPTY]
        if cell.dim == 1:
            return self.gen_data(1, root).target
        return self.gen_data(cell.dim, root).target

    def occurrences(self, cell: Cell) -> list[Occurrence]:
        """Generator occurrences in the cell, in address order."""
        return [
            Occurrence(address, cell.tree.nodes[address])
            for address in cell.tree.node_addresses()
        ]

    def leaf_contexts(self, cell: Cell) -> list[Address]:
        """Leaf addresses; these index the occurrences in the source."""
        return list(leaf_addresses(self.stage(cell.dim), cell.tree))

    def compose_at(self, outer: Cell, leaf: Address, inner: Cell) -> Cell:
        """Placed composition: plug ``inner`` into one occurrence of its
        target inside the source of ``outer``."""
        if outer.dim != inner.dim:
            raise CompositionError(
                f"cannot compose cells of dimensions {outer.dim} and {inner.dim}"
            )
        sig = self.stage(outer.dim)
        expected = edge_color(sig, outer.tree, leaf)
        provided = self.target_name(inner)
        if expected != provided:
            raise CompositionError(
                f"leaf {leaf} expects a cell with target {expected!r}, "
                f"got target {provided!r}"
            )
        return Cell(outer.dim, graft(sig, outer.tree, leaf, inner.tree))

    def compose_total(self, base: Cell, assignment: Mapping[Address, Cell]) -> Cell:
        """Compose one cell into every leaf; order-independent."""
        result = base
        sig = self.stage(base.dim)
        leaves = set(leaf_addresses(sig, base.tree))
        if set(assignment) != leaves:
            raise CompositionError(
                "total composition needs exactly one cell per leaf; got "
                f"{sorted(map(str, assignment))} for leaves {sorted(map(str, leaves))}"
            )
        for leaf in sorted(assignment, reverse=True):
            result = self.compose_at(result, leaf, assignment[leaf])
        return result

    def parallel(self, left: Union[Cell, str], right: Union[Cell, str]) -> bool:
        """Same source and same target; 0-cells are all parallel."""
        if isinstance(left, str) or isinstance(right, str):
            if isinstance(left, str) and isinstance(right, str):
                return True
            raise CompositionError("cannot compare cells of different dimensions")
        if left.dim != right.dim:
            raise CompositionError(
                f"parallel is defined for equidimensional cells, got "
                f"{left.dim} and {right.dim}"
            )
        if self.target_name(left) != self.target_name(right):
            return False
        return self.source_cell(left) == self.source_cell(right)

    def enumerate_cells(self, dim: int, budget: int) -> list[Cell]:
        """All dimension-``dim`` cells with at most ``budget`` generator
        occurrences: identities first, then composites by size."""
        cells = [
            Cell(dim, Tree.unit(name)) for name in self.generators(dim - 1)
        ]
        if budget >= 1 and self.generators(dim):
            for tree in enumerate_trees(self.stage(dim), self.generators(dim), budget):
                cells.append(Cell(dim, tree))
        return cells

    # -- validation ---------------------------------------------------

    def validate(self) -> Report:
        """Check reference integrity, source-tree coherence, and the
        parallelism of every generator's boundary pair."""
        report = Report()
        for name in self.generators(1):
            data = self.gen_data(1, name)
            for end in (data.source, data.target):
                if not self.has_generator(0, end):
                    report.fail(f"1-generator {name!r}: unknown endpoint {end!r}")
        for dim in range(2, self.max_dim + 1):
            sig = self.stage(dim - 1)
            for name in self.generators(dim):
                data = self.gen_data(dim, name)
                if not self.has_generator(dim - 1, data.target):
                    report.fail(f"{dim}-generator {name!r}: unknown target {data.target!r}")
                    continue
                tree = data.source_tree
                try:
                    if tree.is_unit:
                        self.gen_data(dim - 2, tree.unit_color)
                    else:
                        for address in tree.node_addresses():
                            self.gen_data(dim - 1, tree.nodes[address])
                    check_tree(sig, tree)
                except (CoherenceError, UnknownNameError, AddressError) as error:
                    report.fail(f"{dim}-generator {name!r}: {error}")
                    continue
                source = Cell(dim - 1, tree)
                target = self.generator_cell(dim - 1, data.target)
                try:
                    if not self.parallel(source, target):
                        report.fail(
                            f"{dim}-generator {name!r}: source composite and "
                            f"target {data.target!r} are not parallel"
                        )
                except (CoherenceError, AddressError) as error:
                    report.fail(f"{dim}-generator {name!r}: {error}")
        return report


# -- cell-level helpers (no presentation needed) -----------------------


def count(cell: Cell) -> int:
    """Number of generator occurrences in a cell."""
    return cell.tree.size


def count_generator(cell: Cell, name: str) -> int:
    if cell.tree.is_unit:
        return 0
    return sum(1 for op in cell.tree.nodes.values() if op == name)


@dataclass(frozen=True)
class IdentityShape:
    generator: str


@dataclass(frozen=True)
class GeneratorShape:
    generator: str


@dataclass(frozen=True)
class CompositeShape:
    rest: Cell
    leaf: Address
    generator: str


Decomposition = Union[IdentityShape, GeneratorShape, CompositeShape]


def decompose(cell: Cell) -> Decomposition:
    """Peel one generator off a cell, or report it an identity/generator.

    The removed occurrence is the greatest childless node in address
    order, a fixed convention; recomposing with ``compose_at`` restores
    the cell exactly.
    """
    if cell.tree.is_unit:
        return IdentityShape(cell.tree.unit_color)
    nodes = cell.tree.nodes
    if len(nodes) == 1:
        return GeneratorShape(nodes[EMPTY])
    for address in sorted(nodes, reverse=True):
        if not any(
            address.is_prefix_of(other) and other != address for other in nodes
        ):
            rest = {p: op for p, op in nodes.items() if p != address}
            return CompositeShape(
                Cell(cell.dim, Tree.of(rest)), address, nodes[address]
            )
    raise CoherenceError("tree with several nodes has no childless node")


@dataclass(frozen=True)
class PolygraphMorphism:
    """Dimension-indexed generator maps preserving boundaries."""

    source: MtoPolygraph
    target: MtoPolygraph
    maps: dict[int, dict[str, str]]

    def apply(self, dim: int, name: str) -> str:
        try:
            return self.maps[dim][name]
        except KeyError:
            raise UnknownNameError(f"morphism undefined on {dim}-generator {name!r}")

    def map_tree(self, dim: int, tree: Tree) -> Tree:
        """Relabel decorations; addresses carry over unchanged."""
        if tree.is_unit:
            return Tree.unit(self.apply(dim - 1, tree.unit_color))
        return Tree.of({p: self.apply(dim, op) for p, op in tree.nodes.items()})

    def map_cell(self, cell: Cell) -> Cell:
        return Cell(cell.dim, self.map_tree(cell.dim, cell.tree))

    def validate(self) -> Report:
        report = Report()
        for dim, mapping in sorted(self.maps.items()):
            for name, image in mapping.items():
                if not self.source.has_generator(dim, name):
                    report.fail(f"map names unknown {dim}-generator {name!r}")
                    continue
                if not self.target.has_generator(dim, image):
                    report.fail(
                        f"{dim}-generator {name!r} maps to unknown {image!r}"
                    )
                    continue
                if dim == 1:
                    data = self.source.gen_data(1, name)
                    image_data = self.target.gen_data(1, image)
                    if self.apply(0, data.source) != image_data.source:
                        report.fail(f"1-generator {name!r}: source not preserved")
                    if self.apply(0, data.target) != image_data.target:
                        report.fail(f"1-generator {name!r}: target not preserved")
                elif dim >= 2:
                    data = self.source.gen_data(dim, name)
                    image_data = self.target.gen_data(dim, image)
                    if self.apply(dim - 1, data.target) != image_data.target:
                        report.fail(f"{dim}-generator {name!r}: target not preserved")
                    if self.map_tree(dim - 1, data.source_tree) != image_data.source_tree:
                        report.fail(f"{dim}-generator {name!r}: source tree not preserved")
        for dim in range(0, self.source.max_dim + 1):
            for name in self.source.generators(dim):
                if dim not in self.maps or name not in self.maps[dim]:
                    report.fail(f"morphism undefined on {dim}-generator {name!r}")
        return report

    def is_isomorphism(self) -> bool:
        for dim in range(max(self.source.max_dim, self.target.max_dim) + 1):
            images = [self.maps.get(dim, {}).get(g) for g in self.source.generators(dim)]
            if None in images:
                return False
            if sorted(images) != sorted(self.target.generators(dim)):
                return False
        return True


def identity_morphism(polygraph: MtoPolygraph) -> PolygraphMorphism:
    maps = {
        dim: {name: name for name in polygraph.generators(dim)}
        for dim in range(polygraph.max_dim + 1)
    }
    return PolygraphMorphism(polygraph, polygraph, maps)
