"""The bridge between opetopes, opetopic sets, and many-to-one polygraphs.

Realizing an opetope produces the polygraph whose j-generators are the
morphism classes from j-opetopes into it: the target of a class is its
composite with the target embedding, and its source tree redecorates the
domain's tree with composites along source embeddings.  The same recipe
realizes a whole opetopic set.  In the other direction the nerve of a
polygraph collects its generators by shape, where the shape of a generator
replaces every generator in its source tree by its shape, recursively.
The unit and counit checks verify that the two directions invert each
other on finite instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .address import EMPTY
from .category import Face, MorphismClass, faces_of, slice_classes
from .errors import CoherenceError, Report
from .opetope import Opetope, arrow, degenerate, from_tree, point, print_key
from .oset import OpetopicSet
from .polygraph import Cell, MtoPolygraph, PolygraphMorphism
from .trees import Tree


def _class_name(cls: MorphismClass) -> str:
    return str(cls)


def realize_opetope(omega: Opetope) -> MtoPolygraph:
    """The polygraph freely implementing the face structure of an opetope."""
    P = MtoPolygraph()
    classes = slice_classes(omega)
    for dim in sorted(classes):
        for cls in classes[dim]:
            name = _class_name(cls)
            if dim == 0:
                P.add_point(name)
            elif dim == 1:
                source = _class_name(cls.then_face(Face(cls.domain, EMPTY)))
                target = _class_name(cls.then_face(Face(cls.domain)))
                P.add_arrow(name, source, target)
            else:
                phi = cls.domain
                target = _class_name(cls.then_face(Face(phi)))
                if phi.is_degenerate:
                    to_target = cls.then_face(Face(phi))
                    color = _class_name(
                        to_target.then_face(Face(to_target.domain))
                    )
                    tree: Tree = Tree.unit(color)
                else:
                    tree = Tree.of(
                        {
                            p: _class_name(cls.then_face(Face(phi, p)))
                            for p in phi.node_addresses()
                        }
                    )
                P.add_generator(dim, name, tree, target)
    return P


def boundary_polygraph(omega: Opetope) -> MtoPolygraph:
    """The realization with the single top generator removed."""
    whole = realize_opetope(omega)
    P = MtoPolygraph()
    for dim in range(whole.max_dim + 1):
        for name in whole.generators(dim):
            if dim == omega.dim:
                continue
            data = whole.gen_data(dim, name)
            if dim == 0:
                P.add_point(name)
            elif dim == 1:
                P.add_arrow(name, data.source, data.target)
            else:
                P.add_generator(dim, name, data.source_tree, data.target)
    return P


def boundary_colimit_check(omega: Opetope) -> Report:
    """Cross-check the boundary against its gluing description.

    Glue the realizations of all proper faces over the slice: pairs
    (face class A, generator C of the realization of A's domain) are
    identified along every slice morphism.  The resulting classes must
    correspond one-to-one with the boundary generators, i.e. with the
    composite classes A after C.
    """
    from .category import compose, hom

    report = Report()
    slice_objects = [
        cls
        for dim in range(omega.dim)
        for cls in slice_classes(omega).get(dim, [])
    ]
    pairs: list[tuple[MorphismClass, MorphismClass]] = []
    index: dict[tuple[str, str], int] = {}
    for A in slice_objects:
        for dim, inner_classes in slice_classes(A.domain).items():
            for C in inner_classes:
                key = (str(A), str(C))
                index[key] = len(pairs)
                pairs.append((A, C))
    parent = list(range(len(pairs)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        parent[find(i)] = find(j)

    for A in slice_objects:
        for B in slice_objects:
            for h in hom(B.domain, A.domain):
                if compose(A, h) != B:
                    continue
                # the slice morphism h : (B.domain, B) -> (A.domain, A)
                # identifies (B, C) with (A, h after C)
                for dim, inner_classes in slice_classes(B.domain).items():
                    for C in inner_classes:
                        i = index[(str(B), str(C))]
                        j = index[(str(A), str(compose(h, C)))]
                        union(i, j)
    glued: dict[int, set[str]] = {}
    for k, (A, C) in enumerate(pairs):
        glued.setdefault(find(k), set()).add(str(compose(A, C)))
    for root, composites in glued.items():
        if len(composites) != 1:
            report.fail(
                f"glued class maps to several boundary generators: "
                f"{sorted(composites)}"
            )
    boundary_names = {
        str(cls)
        for dim in range(omega.dim)
        for cls in slice_classes(omega).get(dim, [])
    }
    image = {next(iter(v)) for v in glued.values() if len(v) == 1}
    if image != boundary_names:
        report.fail(
            f"glued classes {sorted(image)} differ from boundary generators "
            f"{sorted(boundary_names)}"
        )
    if len(glued) != len(boundary_names):
        report.fail(
            f"{len(glued)} glued classes for {len(boundary_names)} boundary "
            "generators"
        )
    return report


# -- the terminal many-to-one polygraph --------------------------------


def terminal_polygraph(max_dim: int, budget: int) -> MtoPolygraph:
    """The polygraph with one generator per parallel pair, truncated.

    Dimension n+1 generators are the pairs (u, v) with u an n-cell of at
    most ``budget`` occurrences and v a parallel n-generator; sources and
    targets are the projections.  Since parallel generators coincide here,
    v is determined by u, and generators are named ``x<dim>_<index>`` in a
    deterministic order.
    """
    P = MtoPolygraph()
    P.add_point("o")
    if max_dim >= 1:
        P.add_arrow("x1_0", "o", "o")
    for dim in range(2, max_dim + 1):
        lookup: dict[tuple, str] = {}
        for name in P.generators(dim - 1):
            data = P.gen_data(dim - 1, name)
            if dim - 1 == 1:
                key = (data.source, data.target)
            else:
                key = (Cell(dim - 2, data.source_tree), data.target)
            lookup[key] = name
        new_gens = []
        for u in P.enumerate_cells(dim - 1, budget):
            key = (P.source_cell(u), P.target_name(u))
            v = lookup.get(key)
            if v is None:
                continue
            new_gens.append((u, v))
        new_gens.sort(key=lambda uv: (uv[0].tree.size, str(uv[0]), uv[1]))
        for i, (u, v) in enumerate(new_gens):
            P.add_generator(dim, f"x{dim}_{i}", u.tree, v)
    return P


# -- the shape of a generator ------------------------------------------


@dataclass(frozen=True)
class ShapeResult:
    """The opetope shape of a generator with the induced morphism from its
    realization, which sends the top generator to the generator itself."""

    shape: Opetope
    induced: PolygraphMorphism


def _shape_memo(P: MtoPolygraph) -> dict[tuple[int, str], Opetope]:
    return {}


def shape_opetope(
    P: MtoPolygraph,
    dim: int,
    name: str,
    _memo: dict[tuple[int, str], Opetope] | None = None,
) -> Opetope:
    """Replace every generator in the source tree by its shape, recursively."""
    memo = _memo if _memo is not None else {}
    key = (dim, name)
    if key in memo:
        return memo[key]
    P.gen_data(dim, name)
    if dim == 0:
        result = point()
    elif dim == 1:
        result = arrow()
    else:
        tree = P.gen_data(dim, name).source_tree
        if tree.is_unit:
            result = degenerate(shape_opetope(P, dim - 2, tree.unit_color, memo))
        else:
            result = from_tree(
                Tree.of(
                    {
                        p: shape_opetope(P, dim - 1, op, memo)
                        for p, op in tree.nodes.items()
                    }
                ),
                validate=True,
            )
    memo[key] = result
    return result


def fold_faces(P: MtoPolygraph, dim: int, name: str, cls: MorphismClass) -> str:
    """Follow a face word from a generator down through the presentation."""
    current, current_dim = name, dim
    for face in cls.word:
        if current_dim == 1:
            data = P.gen_data(1, current)
            current = data.target if face.is_target else data.source
        else:
            data = P.gen_data(current_dim, current)
            if face.is_target:
                current = data.target
            else:
                current = data.source_tree.decoration(face.address)
        current_dim -= 1
    return current


def shape_of(P: MtoPolygraph, dim: int, name: str) -> ShapeResult:
    """The unique pair of an opetope and a morphism from its realization
    hitting the generator."""
    shape = shape_opetope(P, dim, name)
    realization = realize_opetope(shape)
    maps: dict[int, dict[str, str]] = {}
    for j, classes in slice_classes(shape).items():
        maps[j] = {
            _class_name(cls): fold_faces(P, dim, name, cls) for cls in classes
        }
    induced = PolygraphMorphism(realization, P, maps)
    report = induced.validate()
    if not report.ok:
        raise CoherenceError(
            f"induced morphism of {dim}-generator {name!r} is not a "
            f"polygraph morphism:\n{report}"
        )
    return ShapeResult(shape, induced)


def cells_of_shape(P: MtoPolygraph, omega: Opetope) -> list[str]:
    """All generators whose shape is the given opetope."""
    memo: dict[tuple[int, str], Opetope] = {}
    return [
        name
        for name in P.generators(omega.dim)
        if shape_opetope(P, omega.dim, name, memo) == omega
    ]


# -- realization of opetopic sets and the nerve -------------------------


def oset_generator_names(X: OpetopicSet) -> dict[tuple[Opetope, str], str]:
    """Deterministic generator names for the realization of an opetopic set.

    Cell names are kept verbatim unless two shapes of the same dimension
    share one, in which case the shape's index disambiguates.
    """
    by_dim: dict[int, list[tuple[Opetope, str]]] = {}
    for shape in X.support():
        for name in X.cells_at(shape):
            by_dim.setdefault(shape.dim, []).append((shape, name))
    out: dict[tuple[Opetope, str], str] = {}
    for dim, entries in by_dim.items():
        counts: dict[str, int] = {}
        for _, name in entries:
            counts[name] = counts.get(name, 0) + 1
        shapes = sorted({shape for shape, _ in entries}, key=print_key)
        shape_index = {shape: i for i, shape in enumerate(shapes)}
        for shape, name in entries:
            if counts[name] == 1:
                out[(shape, name)] = name
            else:
                out[(shape, name)] = f"{name}@{shape_index[shape]}"
    return out


def realize_oset(X: OpetopicSet) -> MtoPolygraph:
    """One generator per cell; boundaries are read off the face actions."""
    names = oset_generator_names(X)
    P = MtoPolygraph()
    for shape in X.support():
        dim = shape.dim
        for cell in X.cells_at(shape):
            name = names[(shape, cell)]
            if dim == 0:
                P.add_point(name)
                continue
            target_cell = X.face(shape, cell, Face(shape))
            target = names[(shape.target(), target_cell)]
            if dim == 1:
                source_cell = X.face(shape, cell, Face(shape, EMPTY))
                P.add_arrow(name, names[(point(), source_cell)], target)
                continue
            if shape.is_degenerate:
                below = shape.target()
                color_cell = X.face(below, target_cell, Face(below))
                tree: Tree = Tree.unit(names[(below.target(), color_cell)])
            else:
                tree = Tree.of(
                    {
                        p: names[
                            (
                                shape.source_at(p),
                                X.face(shape, cell, Face(shape, p)),
                            )
                        ]
                        for p in shape.node_addresses()
                    }
                )
            P.add_generator(dim, name, tree, target)
    return P


def nerve(P: MtoPolygraph, max_dim: int) -> OpetopicSet:
    """Generators collected by shape, with faces read off the presentation."""
    X = OpetopicSet(max_dim=max_dim)
    memo: dict[tuple[int, str], Opetope] = {}
    shapes: dict[tuple[int, str], Opetope] = {}
    for dim in range(min(P.max_dim, max_dim) + 1):
        for name in P.generators(dim):
            shape = shape_opetope(P, dim, name, memo)
            shapes[(dim, name)] = shape
            X.add_cell(shape, name)
    for (dim, name), shape in shapes.items():
        for face in faces_of(shape):
            X.set_face(
                shape,
                name,
                face,
                fold_faces(P, dim, name, MorphismClass(shape, (face,))),
            )
    return X


# -- unit and counit of the equivalence ---------------------------------


def unit_check(X: OpetopicSet) -> Report:
    """Cells correspond to same-shape generators of the realization,
    compatibly with every generating face."""
    report = Report()
    P = realize_oset(X)
    names = oset_generator_names(X)
    memo: dict[tuple[int, str], Opetope] = {}
    for shape in X.support():
        cells = X.cells_at(shape)
        image = []
        for cell in cells:
            gen = names[(shape, cell)]
            gen_shape = shape_opetope(P, shape.dim, gen, memo)
            if gen_shape != shape:
                report.fail(
                    f"cell {cell!r} at {shape}: generator has shape {gen_shape}"
                )
                continue
            image.append(gen)
            for face in faces_of(shape):
                expected = names[(face.domain, X.face(shape, cell, face))]
                actual = fold_faces(
                    P, shape.dim, gen, MorphismClass(shape, (face,))
                )
                if expected != actual:
                    report.fail(
                        f"cell {cell!r} at {shape}: face {face} gives "
                        f"{actual!r}, expected {expected!r}"
                    )
        if sorted(image) != sorted(cells_of_shape(P, shape)):
            report.fail(
                f"shape {shape}: cells {sorted(image)} vs generators "
                f"{sorted(cells_of_shape(P, shape))}"
            )
    return report


def counit_check(P: MtoPolygraph) -> Report:
    """Realizing the nerve gives back the polygraph, generator for
    generator."""
    report = Report()
    X = nerve(P, max(P.max_dim, 0))
    Q = realize_oset(X)
    names = oset_generator_names(X)
    maps: dict[int, dict[str, str]] = {dim: {} for dim in range(Q.max_dim + 1)}
    memo: dict[tuple[int, str], Opetope] = {}
    for dim in range(P.max_dim + 1):
        for gen in P.generators(dim):
            shape = shape_opetope(P, dim, gen, memo)
            maps.setdefault(dim, {})[names[(shape, gen)]] = gen
    morphism = PolygraphMorphism(Q, P, maps)
    sub_report = morphism.validate()
    report.failures.extend(sub_report.failures)
    if not morphism.is_isomorphism():
        report.fail("counit is not a generator-for-generator isomorphism")
    return report
