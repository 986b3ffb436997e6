"""Contexts with an indiscernibility partition on objects.

From a context I and an equivalence E on objects, two derived relations:

    lax:    a R x  iff  some b equivalent to a has x
    strict: a S x  iff  every b equivalent to a has x

Definability and compatibility notions, the amenability report, relation
composition (computed by both defining routes and compared), and the two
inclusion/composition lemmas live here.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from .contexts import BinaryRelation, FormalContext
from .errors import PreconditionError, StructuralError
from .verdict import Verdict


def _check_equivalence(e: BinaryRelation) -> list[frozenset[int]]:
    """Validate reflexive/symmetric/transitive; return canonical classes."""
    if e.domain_size != e.codomain_size:
        raise StructuralError("equivalence must be square", witness=(e.domain_size, e.codomain_size))
    n = e.domain_size
    for a in range(n):
        if (a, a) not in e.pairs:
            raise StructuralError("relation not reflexive", witness=(a, a))
    for a, b in e.pairs:
        if (b, a) not in e.pairs:
            raise StructuralError("relation not symmetric", witness=(a, b))
    for a, b in e.pairs:
        for c in range(n):
            if (b, c) in e.pairs and (a, c) not in e.pairs:
                raise StructuralError("relation not transitive", witness=(a, b, c))
    seen: set[int] = set()
    classes = []
    for a in range(n):
        if a in seen:
            continue
        cls = frozenset(b for b in range(n) if (a, b) in e.pairs)
        seen |= cls
        classes.append(cls)
    return classes


@dataclass(frozen=True)
class RoughFormalContext:
    """A context plus an equivalence on its objects (held as a partition)."""

    ctx: FormalContext
    partition: tuple[frozenset[int], ...]

    def __post_init__(self):
        covered: set[int] = set()
        for cls in self.partition:
            if not cls:
                raise StructuralError("empty partition class", witness=cls)
            if covered & cls:
                raise StructuralError("partition classes overlap", witness=sorted(covered & cls))
            covered |= cls
        if covered != set(range(self.ctx.objects)):
            raise StructuralError(
                "partition does not cover the objects",
                witness=sorted(set(range(self.ctx.objects)) ^ covered),
            )
        object.__setattr__(
            self, "partition", tuple(sorted(self.partition, key=min))
        )

    @classmethod
    def from_relation(cls, ctx: FormalContext, e: BinaryRelation) -> "RoughFormalContext":
        if e.domain_size != ctx.objects:
            raise StructuralError("equivalence size does not match context", witness=e.domain_size)
        return cls(ctx, tuple(_check_equivalence(e)))

    @cached_property
    def e_relation(self) -> BinaryRelation:
        pairs = frozenset(
            (a, b) for cls in self.partition for a in cls for b in cls
        )
        return BinaryRelation(self.ctx.objects, self.ctx.objects, pairs)

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        idx = [0] * self.ctx.objects
        for k, cls in enumerate(self.partition):
            for a in cls:
                idx[a] = k
        return tuple(idx)

    def class_of(self, a: int) -> frozenset[int]:
        return self.partition[self.class_index[a]]


def derive_lax(g: RoughFormalContext) -> BinaryRelation:
    """a related to x iff some member of a's class has x."""
    rows = g.ctx.incidence.row_masks
    pairs = set()
    for cls in g.partition:
        union = 0
        for b in cls:
            union |= rows[b]
        for a in cls:
            m = union
            while m:
                low = m & -m
                pairs.add((a, low.bit_length() - 1))
                m ^= low
    return BinaryRelation(g.ctx.objects, g.ctx.features, frozenset(pairs))


def derive_strict(g: RoughFormalContext) -> BinaryRelation:
    """a related to x iff every member of a's class has x."""
    rows = g.ctx.incidence.row_masks
    full = (1 << g.ctx.features) - 1
    pairs = set()
    for cls in g.partition:
        inter = full
        for b in cls:
            inter &= rows[b]
        for a in cls:
            m = inter
            while m:
                low = m & -m
                pairs.add((a, low.bit_length() - 1))
                m ^= low
    return BinaryRelation(g.ctx.objects, g.ctx.features, frozenset(pairs))


def is_e_definable(rel: BinaryRelation, e: BinaryRelation) -> bool:
    """Every column preimage of `rel` is a union of classes of `e`.
    Raises StructuralError if `e` is not an equivalence."""
    classes = _check_equivalence(e)
    if rel.domain_size != e.domain_size:
        raise StructuralError("relation domain does not match equivalence", witness=rel.domain_size)
    cols = rel.column_masks
    class_masks = [sum(1 << a for a in cls) for cls in classes]
    for col in cols:
        for cm in class_masks:
            hit = col & cm
            if hit and hit != cm:
                return False
    return True


def _stable_object_set(ctx: FormalContext, mask: int) -> bool:
    return ctx.down_mask(ctx.up_mask(mask)) == mask


def _stable_feature_set(ctx: FormalContext, mask: int) -> bool:
    return ctx.up_mask(ctx.down_mask(mask)) == mask


def _i_compat_witness(rel: BinaryRelation, ctx: FormalContext, orientation: str):
    """First singleton whose polar is not Galois-stable, or None."""
    if orientation == "ax":
        if (rel.domain_size, rel.codomain_size) != (ctx.objects, ctx.features):
            raise StructuralError("relation shape does not match context", witness=(rel.domain_size, rel.codomain_size))
        for x in range(ctx.features):
            if not _stable_object_set(ctx, rel.zero_image_mask(1 << x)):
                return ("feature", x)
        for a in range(ctx.objects):
            if not _stable_feature_set(ctx, rel.one_image_mask(1 << a)):
                return ("object", a)
        return None
    if orientation == "xa":
        if (rel.domain_size, rel.codomain_size) != (ctx.features, ctx.objects):
            raise StructuralError("relation shape does not match context", witness=(rel.domain_size, rel.codomain_size))
        for a in range(ctx.objects):
            if not _stable_feature_set(ctx, rel.zero_image_mask(1 << a)):
                return ("object", a)
        for x in range(ctx.features):
            if not _stable_object_set(ctx, rel.one_image_mask(1 << x)):
                return ("feature", x)
        return None
    if orientation == "aa":
        if (rel.domain_size, rel.codomain_size) != (ctx.objects, ctx.objects):
            raise StructuralError("relation shape does not match context", witness=(rel.domain_size, rel.codomain_size))
        for a in range(ctx.objects):
            if not _stable_object_set(ctx, rel.zero_image_mask(1 << a)):
                return ("object", a)
            if not _stable_object_set(ctx, rel.one_image_mask(1 << a)):
                return ("object", a)
        return None
    raise StructuralError("unknown orientation", witness=orientation)


def is_i_compatible(rel: BinaryRelation, ctx: FormalContext, orientation: str = "ax") -> bool:
    """All singleton polars of `rel` are Galois-stable sets of `ctx`.

    orientation "ax": relation from objects to features;
    "xa": features to objects; "aa": objects to objects.
    """
    return _i_compat_witness(rel, ctx, orientation) is None


@dataclass(frozen=True)
class AmenabilityReport:
    e_compatible: bool
    lax_compatible: bool
    strict_compatible: bool
    e_witness: object = None
    lax_witness: object = None
    strict_witness: object = None

    @property
    def ok(self) -> bool:
        return self.e_compatible and self.lax_compatible and self.strict_compatible

    def __bool__(self) -> bool:
        return self.ok


def is_amenable(g: RoughFormalContext) -> AmenabilityReport:
    """The partition and both derived relations are compatible with the
    incidence; each part reported separately."""
    ew = _i_compat_witness(g.e_relation, g.ctx, "aa")
    rw = _i_compat_witness(derive_lax(g), g.ctx, "ax")
    sw = _i_compat_witness(derive_strict(g), g.ctx, "ax")
    return AmenabilityReport(
        e_compatible=ew is None,
        lax_compatible=rw is None,
        strict_compatible=sw is None,
        e_witness=ew,
        lax_witness=rw,
        strict_witness=sw,
    )


def compose(r: BinaryRelation, t: BinaryRelation, ctx: FormalContext) -> BinaryRelation:
    """Context-mediated composition of two object-to-feature relations.

    Computed twice, by the column route

        column(x) = r0[ i1[ t0[{x}] ] ]

    and the row route

        row(a) = r1[ i0[ t1[{a}] ] ]

    and the two relations are compared pair-for-pair; a mismatch raises
    StructuralError carrying a differing (object, feature) pair.
    """
    for rel in (r, t):
        if (rel.domain_size, rel.codomain_size) != (ctx.objects, ctx.features):
            raise StructuralError("relation shape does not match context", witness=(rel.domain_size, rel.codomain_size))

    by_columns = set()
    for x in range(ctx.features):
        objs = t.zero_image_mask(1 << x)
        feats = ctx.up_mask(objs)
        col = r.zero_image_mask(feats)
        m = col
        while m:
            low = m & -m
            by_columns.add((low.bit_length() - 1, x))
            m ^= low

    by_rows = set()
    for a in range(ctx.objects):
        feats = t.one_image_mask(1 << a)
        objs = ctx.down_mask(feats)
        row = r.one_image_mask(objs)
        m = row
        while m:
            low = m & -m
            by_rows.add((a, low.bit_length() - 1))
            m ^= low

    if by_columns != by_rows:
        diff = sorted(by_columns ^ by_rows)[0]
        raise StructuralError(
            "composition routes disagree", witness=diff
        )
    return BinaryRelation(ctx.objects, ctx.features, frozenset(by_columns))


def verify_sandwich(g: RoughFormalContext) -> Verdict:
    """strict ⊆ incidence ⊆ lax, with the first failing pair as witness."""
    i_pairs = g.ctx.incidence.pairs
    s_pairs = derive_strict(g).pairs
    r_pairs = derive_lax(g).pairs
    for p in sorted(s_pairs - i_pairs):
        return Verdict(False, witness=("strict not below incidence", p))
    for p in sorted(i_pairs - r_pairs):
        return Verdict(False, witness=("incidence not below lax", p))
    return Verdict(True, checked=len(i_pairs) + len(s_pairs))


def verify_kb(g: RoughFormalContext) -> Verdict:
    """On an amenable instance: lax;lax ⊆ lax and strict ⊆ strict;strict.

    Raises PreconditionError when the instance is not amenable.
    """
    report = is_amenable(g)
    if not report.ok:
        raise PreconditionError(
            "composition lemma needs an amenable instance",
            witness=(report.e_witness, report.lax_witness, report.strict_witness),
        )
    r = derive_lax(g)
    s = derive_strict(g)
    rr = compose(r, r, g.ctx)
    ss = compose(s, s, g.ctx)
    for p in sorted(rr.pairs - r.pairs):
        return Verdict(False, witness=("lax;lax not below lax", p))
    for p in sorted(s.pairs - ss.pairs):
        return Verdict(False, witness=("strict not below strict;strict", p))
    return Verdict(True, checked=len(rr.pairs) + len(s.pairs))


def partition_from_ids(ids: Iterable[int]) -> tuple[frozenset[int], ...]:
    """Helper: class ids per object index -> canonical partition."""
    groups: dict[int, set[int]] = {}
    for a, k in enumerate(ids):
        groups.setdefault(k, set()).add(a)
    return tuple(sorted((frozenset(v) for v in groups.values()), key=min))
