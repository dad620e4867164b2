"""The category of opetopes, presented by face embeddings and four relations.

Objects are opetopes; generating morphisms are the target embedding ``t``
into each positive-dimensional opetope and one source embedding ``s[p]``
per node address.  Morphisms are words of generators modulo the relation
squares (inner edge, the two globularity squares, and the degeneracy
square).  Words are kept outermost-first; equality is decided by breadth
first search over length-preserving rewrites, and each class is named by
its least member under the order target-before-source, then by address.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .address import EMPTY, Address
from .errors import CompositionError, OpetopicError

from .opetope import Opetope


@dataclass(frozen=True)
class Face:
    """A single face embedding into ``codomain``; address None means target."""

    codomain: Opetope
    address: Address | None = None

    def __post_init__(self) -> None:
        if self.address is None:
            if self.codomain.dim < 1:
                raise CompositionError("the point has no target embedding")
        elif self.address not in self.codomain.node_addresses():
            raise CompositionError(
                f"{self.address} is not a node address of {self.codomain}"
            )

    @property
    def is_target(self) -> bool:
        return self.address is None

    @property
    def domain(self) -> Opetope:
        if self.address is None:
            return self.codomain.target()
        return self.codomain.source_at(self.address)

    def sort_key(self):
        if self.address is None:
            return (0, (), str(self.codomain))
        return (1, tuple(self.address), str(self.codomain))

    def __str__(self) -> str:
        return "t" if self.address is None else f"s{self.address}"


Word = tuple[Face, ...]


def word_key(word: Word):
    return tuple(face.sort_key() for face in word)


def faces_of(omega: Opetope) -> tuple[Face, ...]:
    """Target embedding first, then source embeddings in address order."""
    if omega.dim < 1:
        return ()
    sources = tuple(Face(omega, p) for p in omega.node_addresses())
    return (Face(omega),) + sources


@dataclass(frozen=True)
class RelationInstance:
    """One commuting square: two equal two-step words into the same opetope."""

    kind: str
    left: tuple[Face, Face]
    right: tuple[Face, Face]

    def __post_init__(self) -> None:
        if self.left[1].domain != self.right[1].domain:
            raise OpetopicError(
                f"relation {self.kind} of {self.left[0].codomain} has unequal "
                f"domains; the face identities are broken"
            )


@lru_cache(maxsize=None)
def relation_instances(omega: Opetope) -> tuple[RelationInstance, ...]:
    """All relation squares whose outer faces land in ``omega``."""
    if omega.dim < 2:
        return ()
    instances: list[RelationInstance] = []
    target = omega.target()
    if omega.is_degenerate:
        instances.append(
            RelationInstance(
                "degen",
                (Face(omega), Face(target)),
                (Face(omega), Face(target, EMPTY)),
            )
        )
        return tuple(instances)
    instances.append(
        RelationInstance(
            "glob1",
            (Face(omega), Face(target)),
            (Face(omega, EMPTY), Face(omega.source_at(EMPTY))),
        )
    )
    for address in omega.node_addresses():
        if address == EMPTY:
            continue
        p, q = address.parent, address.last
        instances.append(
            RelationInstance(
                "inner",
                (Face(omega, p), Face(omega.source_at(p), q)),
                (Face(omega, address), Face(omega.source_at(address))),
            )
        )
    readdress = omega.readdress()
    for leaf in omega.leaf_addresses():
        p, q = leaf.parent, leaf.last
        instances.append(
            RelationInstance(
                "glob2",
                (Face(omega, p), Face(omega.source_at(p), q)),
                (Face(omega), Face(target, readdress[leaf])),
            )
        )
    return tuple(instances)


@lru_cache(maxsize=None)
def word_class(word: Word) -> frozenset[Word]:
    """The full rewrite closure of a word; all members share its boundary."""
    seen = {word}
    frontier = [word]
    while frontier:
        current = frontier.pop()
        for i in range(len(current) - 1):
            pair = (current[i], current[i + 1])
            for relation in relation_instances(pair[0].codomain):
                replacement = None
                if relation.left == pair:
                    replacement = relation.right
                elif relation.right == pair:
                    replacement = relation.left
                if replacement is not None:
                    rewritten = current[:i] + replacement + current[i + 2 :]
                    if rewritten not in seen:
                        seen.add(rewritten)
                        frontier.append(rewritten)
    return frozenset(seen)


def canonical_word(word: Word) -> Word:
    return min(word_class(word), key=word_key)


def words_equal(first: Word, second: Word) -> bool:
    return second in word_class(first)


def word_domain(codomain: Opetope, word: Word) -> Opetope:
    current = codomain
    for face in word:
        if face.codomain != current:
            raise CompositionError(
                f"face into {face.codomain} cannot follow a face onto {current}"
            )
        current = face.domain
    return current


@dataclass(frozen=True)
class MorphismClass:
    """A morphism of the category: an equivalence class of face words,
    carried by its canonical member."""

    codomain: Opetope
    word: Word

    @property
    def domain(self) -> Opetope:
        return word_domain(self.codomain, self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def members(self) -> frozenset[Word]:
        if not self.word:
            return frozenset({()})
        return word_class(self.word)

    def then_face(self, face: Face) -> "MorphismClass":
        """Precompose with one more face on the domain side."""
        if face.codomain != self.domain:
            raise CompositionError(
                f"face into {face.codomain} does not attach to domain {self.domain}"
            )
        return morphism(self.codomain, self.word + (face,))

    def __str__(self) -> str:
        if not self.word:
            return "id"
        return ".".join(str(face) for face in reversed(self.word))

    def sort_key(self):
        return (len(self.word), word_key(self.word))


def morphism(codomain: Opetope, word: Word) -> MorphismClass:
    word_domain(codomain, word)
    return MorphismClass(codomain, canonical_word(word) if word else ())


def identity(omega: Opetope) -> MorphismClass:
    return MorphismClass(omega, ())


def compose(outer: MorphismClass, inner: MorphismClass) -> MorphismClass:
    """Composite of ``inner`` followed by ``outer`` (outer is closest to the
    common codomain)."""
    if outer.domain != inner.codomain:
        raise CompositionError(
            f"cannot compose: domain {outer.domain} != codomain {inner.codomain}"
        )
    return morphism(outer.codomain, outer.word + inner.word)


@lru_cache(maxsize=None)
def _all_words_into(omega: Opetope) -> tuple[Word, ...]:
    words: list[Word] = [()]
    for face in faces_of(omega):
        for tail in _all_words_into(face.domain):
            words.append((face,) + tail)
    return tuple(words)


@lru_cache(maxsize=None)
def _slice_classes(omega: Opetope) -> tuple[MorphismClass, ...]:
    classes = {canonical_word(word) for word in _all_words_into(omega)}
    morphisms = [MorphismClass(omega, word) for word in classes]
    morphisms.sort(key=MorphismClass.sort_key)
    return tuple(morphisms)


def slice_classes(omega: Opetope) -> dict[int, list[MorphismClass]]:
    """Every morphism into ``omega``, grouped by domain dimension.

    This is the slice of the category over ``omega``; it lists the iterated
    faces of the opetope with their identifications already performed.
    """
    grouped: dict[int, list[MorphismClass]] = {}
    for cls in _slice_classes(omega):
        grouped.setdefault(cls.domain.dim, []).append(cls)
    return grouped


def hom(phi: Opetope, omega: Opetope) -> list[MorphismClass]:
    """All morphisms from ``phi`` to ``omega`` in deterministic order."""
    if phi.dim > omega.dim:
        return []
    return [cls for cls in _slice_classes(omega) if cls.domain == phi]
