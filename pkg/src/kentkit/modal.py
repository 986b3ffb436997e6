"""Concept-level modal operators and one-sorted operator lattices.

A ModalLattice is a finite lattice with four unary total operations
(box/diamond in a strict and a lax flavor). Nothing is assumed about them
at construction; the law checkers live in the algebra module.

Terms, inequalities, and quasi-inequalities are evaluated by brute force
over all assignments, guarded by an evaluation-count capacity bound.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .contexts import BinaryRelation, ConceptLattice, FormalContext, enumerate_concepts
from .errors import CapacityError, EvalError, PreconditionError, StructuralError
from .lattice import Lattice
from .rough import RoughFormalContext, derive_lax, derive_strict, is_amenable, is_i_compatible
from .verdict import Verdict

DEFAULT_MAX_EVALS = 10_000_000

UNARY_KINDS = ("boxS", "diaS", "boxL", "diaL")


@dataclass(frozen=True)
class ModalLattice:
    lattice: Lattice
    box_s: tuple[int, ...]
    dia_s: tuple[int, ...]
    box_l: tuple[int, ...]
    dia_l: tuple[int, ...]

    def __post_init__(self):
        n = self.lattice.n
        for name in ("box_s", "dia_s", "box_l", "dia_l"):
            table = getattr(self, name)
            object.__setattr__(self, name, tuple(table))
            table = getattr(self, name)
            if len(table) != n:
                raise StructuralError(f"{name} table has wrong length", witness=len(table))
            for v in table:
                if not 0 <= v < n:
                    raise StructuralError(f"{name} value out of range", witness=v)

    def op(self, kind: str) -> tuple[int, ...]:
        return {
            "boxS": self.box_s,
            "diaS": self.dia_s,
            "boxL": self.box_l,
            "diaL": self.dia_l,
        }[kind]


# --------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Term:
    kind: str
    args: tuple["Term", ...] = ()
    name: str | None = None

    @classmethod
    def var(cls, name: str) -> "Term":
        return cls("var", (), name)

    @classmethod
    def top(cls) -> "Term":
        return cls("top")

    @classmethod
    def bot(cls) -> "Term":
        return cls("bot")

    @classmethod
    def meet(cls, a: "Term", b: "Term") -> "Term":
        return cls("meet", (a, b))

    @classmethod
    def join(cls, a: "Term", b: "Term") -> "Term":
        return cls("join", (a, b))

    @classmethod
    def box_s(cls, a: "Term") -> "Term":
        return cls("boxS", (a,))

    @classmethod
    def dia_s(cls, a: "Term") -> "Term":
        return cls("diaS", (a,))

    @classmethod
    def box_l(cls, a: "Term") -> "Term":
        return cls("boxL", (a,))

    @classmethod
    def dia_l(cls, a: "Term") -> "Term":
        return cls("diaL", (a,))

    def variables(self) -> frozenset[str]:
        if self.kind == "var":
            return frozenset({self.name})  # type: ignore[arg-type]
        out: frozenset[str] = frozenset()
        for a in self.args:
            out |= a.variables()
        return out


def _auto_vars(*terms: Term) -> tuple[str, ...]:
    names: set[str] = set()
    for t in terms:
        names |= t.variables()
    return tuple(sorted(names))


@dataclass(frozen=True)
class Inequality:
    lhs: Term
    rhs: Term
    variables: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.variables:
            object.__setattr__(self, "variables", _auto_vars(self.lhs, self.rhs))


@dataclass(frozen=True)
class QuasiInequality:
    premises: tuple[Inequality, ...]
    conclusion: Inequality

    @property
    def variables(self) -> tuple[str, ...]:
        names: set[str] = set()
        for p in self.premises:
            names |= set(p.variables)
        names |= set(self.conclusion.variables)
        return tuple(sorted(names))


def eval_term(m: ModalLattice, term: Term, assignment: Mapping[str, int]) -> int:
    """Evaluate over the operator lattice; unbound variables raise EvalError."""
    if term.kind == "var":
        try:
            return assignment[term.name]  # type: ignore[index]
        except KeyError:
            raise EvalError(f"unbound variable {term.name!r}")
    if term.kind == "top":
        return m.lattice.top
    if term.kind == "bot":
        return m.lattice.bottom
    if term.kind == "meet":
        return m.lattice.meet[eval_term(m, term.args[0], assignment)][
            eval_term(m, term.args[1], assignment)
        ]
    if term.kind == "join":
        return m.lattice.join[eval_term(m, term.args[0], assignment)][
            eval_term(m, term.args[1], assignment)
        ]
    if term.kind in UNARY_KINDS:
        return m.op(term.kind)[eval_term(m, term.args[0], assignment)]
    raise EvalError(f"unknown term kind {term.kind!r}")


def _assignment_space(m: ModalLattice, variables: tuple[str, ...], max_evals: int) -> Iterable[dict[str, int]]:
    total = m.lattice.n ** len(variables)
    if total > max_evals:
        raise CapacityError(
            f"{total} assignments exceed the evaluation bound {max_evals}",
            bound=max_evals, requested=total,
        )
    for values in itertools.product(range(m.lattice.n), repeat=len(variables)):
        yield dict(zip(variables, values))


def check_inequality(
    m: ModalLattice, ineq: Inequality, *, max_evals: int = DEFAULT_MAX_EVALS
) -> Verdict:
    """Brute-force validity of lhs <= rhs; the witness is the first failing
    assignment in variable-lexicographic order."""
    count = 0
    for asg in _assignment_space(m, tuple(ineq.variables), max_evals):
        count += 1
        if not m.lattice.leq(eval_term(m, ineq.lhs, asg), eval_term(m, ineq.rhs, asg)):
            return Verdict(False, witness=asg, checked=count)
    return Verdict(True, checked=count)


def check_quasi_inequality(
    m: ModalLattice, quasi: QuasiInequality, *, max_evals: int = DEFAULT_MAX_EVALS
) -> Verdict:
    """Premises jointly imply the conclusion, over all assignments."""
    count = 0
    for asg in _assignment_space(m, quasi.variables, max_evals):
        count += 1
        if all(
            m.lattice.leq(eval_term(m, p.lhs, asg), eval_term(m, p.rhs, asg))
            for p in quasi.premises
        ):
            if not m.lattice.leq(
                eval_term(m, quasi.conclusion.lhs, asg),
                eval_term(m, quasi.conclusion.rhs, asg),
            ):
                return Verdict(False, witness=asg, checked=count)
    return Verdict(True, checked=count)


# --------------------------------------------------------------------------
# concept-level operators


def _box_index(rel: BinaryRelation, cl: ConceptLattice, c: int) -> int:
    extent = rel.zero_image_mask(cl.intent_masks[c])
    idx = cl.index_of_extent_mask(extent)
    return idx


def _diamond_index(rel: BinaryRelation, cl: ConceptLattice, c: int) -> int:
    intent = rel.one_image_mask(cl.extent_masks[c])
    extent = cl.context.down_mask(intent)
    idx = cl.index_of_extent_mask(extent)
    if cl.intent_masks[idx] != intent:
        raise StructuralError("diamond image is not a concept", witness=c)
    return idx


def _diamond_xa_index(rel: BinaryRelation, cl: ConceptLattice, c: int) -> int:
    intent = rel.zero_image_mask(cl.extent_masks[c])
    extent = cl.context.down_mask(intent)
    idx = cl.index_of_extent_mask(extent)
    if cl.intent_masks[idx] != intent:
        raise StructuralError("diamond image is not a concept", witness=c)
    return idx


def modal_box(rel: BinaryRelation, cl: ConceptLattice, c: int) -> int:
    """Concept whose extent collects the objects rel-related to all of c's
    intent. Requires an object-to-feature relation compatible with the
    context's incidence."""
    if not is_i_compatible(rel, cl.context, "ax"):
        raise PreconditionError("relation is not compatible with the context")
    return _box_index(rel, cl, c)


def modal_diamond(rel: BinaryRelation, cl: ConceptLattice, c: int) -> int:
    """Concept whose intent collects the features rel-shared by all of c's
    extent (object-to-feature orientation)."""
    if not is_i_compatible(rel, cl.context, "ax"):
        raise PreconditionError("relation is not compatible with the context")
    return _diamond_index(rel, cl, c)


def modal_diamond_xa(rel: BinaryRelation, cl: ConceptLattice, c: int) -> int:
    """Diamond for a feature-to-object relation: the intent is the set of
    features rel-related to every object in c's extent."""
    if not is_i_compatible(rel, cl.context, "xa"):
        raise PreconditionError("relation is not compatible with the context")
    return _diamond_xa_index(rel, cl, c)


def complex_algebra_parts(
    g: RoughFormalContext,
    *,
    max_objects: int | None = None,
    max_features: int | None = None,
) -> tuple[ConceptLattice, ModalLattice]:
    """Concept lattice of the underlying context plus the four operators
    induced by the derived relations: strict box/diamond from the strict
    relation, lax box/diamond from the lax one.

    Requires an amenable instance (PreconditionError otherwise).
    """
    report = is_amenable(g)
    if not report.ok:
        raise PreconditionError(
            "complex algebra needs an amenable instance",
            witness=(report.e_witness, report.lax_witness, report.strict_witness),
        )
    kwargs = {}
    if max_objects is not None:
        kwargs["max_objects"] = max_objects
    if max_features is not None:
        kwargs["max_features"] = max_features
    cl = enumerate_concepts(g.ctx, **kwargs)
    r = derive_lax(g)
    s = derive_strict(g)
    n = len(cl.concepts)
    ml = ModalLattice(
        lattice=cl.lattice,
        box_s=tuple(_box_index(s, cl, c) for c in range(n)),
        dia_s=tuple(_diamond_index(s, cl, c) for c in range(n)),
        box_l=tuple(_box_index(r, cl, c) for c in range(n)),
        dia_l=tuple(_diamond_index(r, cl, c) for c in range(n)),
    )
    return cl, ml


def complex_algebra(
    g: RoughFormalContext,
    *,
    max_objects: int | None = None,
    max_features: int | None = None,
) -> ModalLattice:
    return complex_algebra_parts(
        g, max_objects=max_objects, max_features=max_features
    )[1]


def identity_modal(lat: Lattice) -> ModalLattice:
    ident = tuple(range(lat.n))
    return ModalLattice(lat, ident, ident, ident, ident)
