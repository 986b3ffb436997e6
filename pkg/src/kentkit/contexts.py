"""Formal contexts, polars, concept enumeration, representation theorem.

A context is (objects, features, incidence). The two polars of a relation
T between finite index sets are

    zero_image(T, V') = { u : for all v in V', u T v }
    one_image(T, U')  = { v : for all u in U', u T v }

forming the usual antitone Galois connection. Concepts are the stable
pairs; enumeration is closure-based in lectic order over extents.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import cached_property

from .errors import CapacityError, StructuralError
from .lattice import Lattice, OrderInput, is_order_iso

DEFAULT_MAX_OBJECTS = 20
DEFAULT_MAX_FEATURES = 20


@dataclass(frozen=True)
class BinaryRelation:
    """Relation between {0..domain_size-1} and {0..codomain_size-1}."""

    domain_size: int
    codomain_size: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for u, v in self.pairs:
            if not (0 <= u < self.domain_size and 0 <= v < self.codomain_size):
                raise StructuralError("relation pair out of range", witness=(u, v))

    def has(self, u: int, v: int) -> bool:
        return (u, v) in self.pairs

    def row(self, u: int) -> frozenset[int]:
        return frozenset(v for (a, v) in self.pairs if a == u)

    def column(self, v: int) -> frozenset[int]:
        return frozenset(u for (u, x) in self.pairs if x == v)

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        rows = [0] * self.domain_size
        for u, v in self.pairs:
            rows[u] |= 1 << v
        return tuple(rows)

    @cached_property
    def column_masks(self) -> tuple[int, ...]:
        cols = [0] * self.codomain_size
        for u, v in self.pairs:
            cols[v] |= 1 << u
        return tuple(cols)

    def zero_image_mask(self, col_mask: int) -> int:
        acc = (1 << self.domain_size) - 1
        cols = self.column_masks
        m = col_mask
        while m:
            low = m & -m
            acc &= cols[low.bit_length() - 1]
            m ^= low
        return acc

    def one_image_mask(self, row_mask: int) -> int:
        acc = (1 << self.codomain_size) - 1
        rows = self.row_masks
        m = row_mask
        while m:
            low = m & -m
            acc &= rows[low.bit_length() - 1]
            m ^= low
        return acc

    def transpose(self) -> "BinaryRelation":
        return BinaryRelation(
            self.codomain_size, self.domain_size,
            frozenset((v, u) for (u, v) in self.pairs),
        )

    @classmethod
    def identity(cls, n: int) -> "BinaryRelation":
        return cls(n, n, frozenset((i, i) for i in range(n)))

    @classmethod
    def full(cls, n: int, m: int) -> "BinaryRelation":
        return cls(n, m, frozenset((i, j) for i in range(n) for j in range(m)))


def _to_mask(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << i
    return mask


def _to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def zero_image(rel: BinaryRelation, cols: Iterable[int]) -> frozenset[int]:
    """Elements of the domain related to every member of `cols`."""
    return _to_set(rel.zero_image_mask(_to_mask(cols)))


def one_image(rel: BinaryRelation, rows: Iterable[int]) -> frozenset[int]:
    """Elements of the codomain related to every member of `rows`."""
    return _to_set(rel.one_image_mask(_to_mask(rows)))


@dataclass(frozen=True)
class FormalContext:
    objects: int
    features: int
    incidence: BinaryRelation

    def __post_init__(self):
        if (self.incidence.domain_size, self.incidence.codomain_size) != (
            self.objects,
            self.features,
        ):
            raise StructuralError(
                "incidence shape does not match context",
                witness=(self.incidence.domain_size, self.incidence.codomain_size),
            )

    def up_mask(self, object_mask: int) -> int:
        return self.incidence.one_image_mask(object_mask)

    def down_mask(self, feature_mask: int) -> int:
        return self.incidence.zero_image_mask(feature_mask)


def up(ctx: FormalContext, objects: Iterable[int]) -> frozenset[int]:
    """Features shared by every object in the set."""
    return one_image(ctx.incidence, objects)


def down(ctx: FormalContext, features: Iterable[int]) -> frozenset[int]:
    """Objects carrying every feature in the set."""
    return zero_image(ctx.incidence, features)


@dataclass(frozen=True)
class Concept:
    extent: frozenset[int]
    intent: frozenset[int]


@dataclass(frozen=True)
class ConceptLattice:
    """All concepts of a context, sorted by (extent size, extent bits),
    together with the induced lattice structure."""

    context: FormalContext
    concepts: tuple[Concept, ...]
    lattice: Lattice = field(repr=False)

    @property
    def order(self) -> tuple[tuple[bool, ...], ...]:
        n = self.lattice.n
        return tuple(
            tuple(self.lattice.leq(i, j) for j in range(n)) for i in range(n)
        )

    @property
    def meet_table(self) -> tuple[tuple[int, ...], ...]:
        return self.lattice.meet

    @property
    def join_table(self) -> tuple[tuple[int, ...], ...]:
        return self.lattice.join

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    @cached_property
    def extent_masks(self) -> tuple[int, ...]:
        return tuple(_to_mask(c.extent) for c in self.concepts)

    @cached_property
    def intent_masks(self) -> tuple[int, ...]:
        return tuple(_to_mask(c.intent) for c in self.concepts)

    @cached_property
    def _extent_index(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.extent_masks)}

    def index_of_extent_mask(self, mask: int) -> int:
        try:
            return self._extent_index[mask]
        except KeyError:
            raise StructuralError("not an extent of this context", witness=_to_set(mask))


def enumerate_concepts(
    ctx: FormalContext,
    *,
    max_objects: int = DEFAULT_MAX_OBJECTS,
    max_features: int = DEFAULT_MAX_FEATURES,
) -> ConceptLattice:
    """Closure-based enumeration (lectic order over extents).

    Raises CapacityError when the context exceeds the configured bounds;
    both bounds can be overridden by keyword.
    """
    if ctx.objects > max_objects:
        raise CapacityError(
            f"context has {ctx.objects} objects, bound is {max_objects}",
            bound=max_objects, requested=ctx.objects,
        )
    if ctx.features > max_features:
        raise CapacityError(
            f"context has {ctx.features} features, bound is {max_features}",
            bound=max_features, requested=ctx.features,
        )

    n = ctx.objects

    def closure(mask: int) -> int:
        return ctx.down_mask(ctx.up_mask(mask))

    closed: list[int] = []
    current = closure(0)
    closed.append(current)
    full = (1 << n) - 1
    while current != full and n > 0:
        nxt = None
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                current &= ~bit
            else:
                candidate = closure(current | bit)
                if (candidate & (bit - 1)) == (current & (bit - 1)):
                    nxt = candidate
                    break
        if nxt is None:
            break
        closed.append(nxt)
        current = nxt

    closed.sort(key=lambda m: (bin(m).count("1"), m))
    concepts = tuple(
        Concept(_to_set(m), _to_set(ctx.up_mask(m))) for m in closed
    )
    masks = closed
    lat = Lattice.from_le(
        len(masks), lambda i, j: masks[i] & ~masks[j] == 0
    )
    return ConceptLattice(ctx, concepts, lat)


@dataclass(frozen=True)
class BirkhoffResult:
    ok: bool
    iso: tuple[int, ...] | None
    concept_lattice: ConceptLattice
    counterexample: tuple[int, int] | None = None


def check_birkhoff(lat: Lattice | tuple[int, OrderInput]) -> BirkhoffResult:
    """Verify the finite representation: the lattice is isomorphic to the
    concept lattice of its own order context, via a ↦ (lower cone, upper cone).

    Accepts either a Lattice or raw (n, order) input; raw input that is not
    a lattice raises StructuralError naming the failing pair.
    """
    if not isinstance(lat, Lattice):
        n, le = lat
        lat = Lattice.from_le(n, le)

    ctx = FormalContext(
        lat.n,
        lat.n,
        BinaryRelation(lat.n, lat.n, frozenset(lat.le_pairs())),
    )
    cl = enumerate_concepts(ctx, max_objects=max(lat.n, DEFAULT_MAX_OBJECTS),
                            max_features=max(lat.n, DEFAULT_MAX_FEATURES))
    if len(cl.concepts) != lat.n:
        return BirkhoffResult(False, None, cl, counterexample=(lat.n, len(cl.concepts)))

    iso = []
    for a in range(lat.n):
        try:
            iso.append(cl.index_of_extent_mask(lat.down_mask(a)))
        except StructuralError:
            return BirkhoffResult(False, None, cl, counterexample=(a, a))
    iso_t = tuple(iso)

    target = Lattice.from_le(len(cl.concepts), lambda i, j: cl.concepts[i].extent <= cl.concepts[j].extent)
    if not is_order_iso(iso_t, lat, target):
        for i in range(lat.n):
            for j in range(lat.n):
                if lat.leq(i, j) != target.leq(iso_t[i], iso_t[j]):
                    return BirkhoffResult(False, None, cl, counterexample=(i, j))
        return BirkhoffResult(False, None, cl, counterexample=(0, 0))
    return BirkhoffResult(True, iso_t, cl)
