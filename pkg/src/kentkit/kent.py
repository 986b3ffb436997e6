"""Operator algebras with a strict and a lax interior/closure pair, their
law checkers, and the factorization into a five-sorted algebra of kernels.

The one-sorted side is a ModalLattice whose four operations are expected to
satisfy adjunction, reflexivity-style, and transitivity-style laws
(check_aka). The five-sorted side (HeterogeneousAlgebra) keeps the images
of the four operations as separate carriers connected by inclusion-like and
projection-like maps (check_haka). factorize/recompose move between the two
presentations.

check_haka only covers the heterogeneous laws proper. They are strictly
weaker than the one-sorted laws: an algebra can pass all of them while its
recomposition fails check_aka, because nothing in them ties the strict
interior to the strict closure. recompose therefore validates its output
and reports a witness when the composite operators are lawless.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import PreconditionError, StructuralError
from .lattice import Lattice, is_bounded_hom
from .modal import (
    DEFAULT_MAX_EVALS,
    Inequality,
    ModalLattice,
    QuasiInequality,
    Term,
    check_inequality,
    check_quasi_inequality,
)
from .verdict import Report, Verdict


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term


def _check_equation(m: ModalLattice, eq: Equation, max_evals: int) -> Verdict:
    fwd = check_inequality(m, Inequality(eq.lhs, eq.rhs), max_evals=max_evals)
    if not fwd.ok:
        return fwd
    back = check_inequality(m, Inequality(eq.rhs, eq.lhs), max_evals=max_evals)
    if not back.ok:
        return back
    return Verdict(True, checked=fwd.checked)


def _check_law(m: ModalLattice, law, max_evals: int) -> Verdict:
    if isinstance(law, Inequality):
        return check_inequality(m, law, max_evals=max_evals)
    if isinstance(law, QuasiInequality):
        return check_quasi_inequality(m, law, max_evals=max_evals)
    if isinstance(law, Equation):
        return _check_equation(m, law, max_evals)
    raise TypeError(f"unsupported law object {law!r}")


def _run_laws(m: ModalLattice, laws, max_evals: int) -> Report:
    return Report(tuple((name, _check_law(m, law, max_evals)) for name, law in laws))


# --------------------------------------------------------------------------
# law tables

_A = Term.var("a")
_B = Term.var("b")


def core_laws() -> tuple[tuple[str, object], ...]:
    """Defining conditions of the operator algebras: both adjunctions, the
    contractive/expansive laws, the transitivity-style laws, and normality
    of each operation."""
    a, b = _A, _B
    return (
        ("strict-adjunction-fwd",
         QuasiInequality((Inequality(Term.dia_s(a), b),), Inequality(a, Term.box_s(b)))),
        ("strict-adjunction-back",
         QuasiInequality((Inequality(a, Term.box_s(b)),), Inequality(Term.dia_s(a), b))),
        ("lax-adjunction-fwd",
         QuasiInequality((Inequality(Term.dia_l(a), b),), Inequality(a, Term.box_l(b)))),
        ("lax-adjunction-back",
         QuasiInequality((Inequality(a, Term.box_l(b)),), Inequality(Term.dia_l(a), b))),
        ("strict-box-contractive", Inequality(Term.box_s(a), a)),
        ("strict-dia-expansive", Inequality(a, Term.dia_s(a))),
        ("lax-box-expansive", Inequality(a, Term.box_l(a))),
        ("lax-dia-contractive", Inequality(Term.dia_l(a), a)),
        ("strict-box-transitive", Inequality(Term.box_s(a), Term.box_s(Term.box_s(a)))),
        ("strict-dia-transitive", Inequality(Term.dia_s(Term.dia_s(a)), Term.dia_s(a))),
        ("lax-box-transitive", Inequality(Term.box_l(Term.box_l(a)), Term.box_l(a))),
        ("lax-dia-transitive", Inequality(Term.dia_l(a), Term.dia_l(Term.dia_l(a)))),
        ("strict-box-meets",
         Equation(Term.box_s(Term.meet(a, b)), Term.meet(Term.box_s(a), Term.box_s(b)))),
        ("strict-box-top", Equation(Term.box_s(Term.top()), Term.top())),
        ("strict-dia-joins",
         Equation(Term.dia_s(Term.join(a, b)), Term.join(Term.dia_s(a), Term.dia_s(b)))),
        ("strict-dia-bottom", Equation(Term.dia_s(Term.bot()), Term.bot())),
        ("lax-box-meets",
         Equation(Term.box_l(Term.meet(a, b)), Term.meet(Term.box_l(a), Term.box_l(b)))),
        ("lax-box-top", Equation(Term.box_l(Term.top()), Term.top())),
        ("lax-dia-joins",
         Equation(Term.dia_l(Term.join(a, b)), Term.join(Term.dia_l(a), Term.dia_l(b)))),
        ("lax-dia-bottom", Equation(Term.dia_l(Term.bot()), Term.bot())),
    )


def derived_laws() -> tuple[tuple[str, object], ...]:
    """Consequences of the core laws. They hold in every algebra that passes
    check_aka; a failure after that signals an internal inconsistency."""
    a = _A
    return (
        ("mixed-sandwich",
         Inequality(Term.join(Term.box_s(a), Term.dia_l(a)),
                    Term.meet(Term.box_l(a), Term.dia_s(a)))),
        ("strict-unit", Inequality(a, Term.box_s(Term.dia_s(a)))),
        ("strict-counit", Inequality(Term.dia_s(Term.box_s(a)), a)),
        ("lax-unit", Inequality(a, Term.box_l(Term.dia_l(a)))),
        ("lax-counit", Inequality(Term.dia_l(Term.box_l(a)), a)),
        ("strict-box-unit", Inequality(Term.box_s(a), Term.box_s(Term.dia_s(a)))),
        ("strict-dia-counit", Inequality(Term.dia_s(Term.box_s(a)), Term.dia_s(a))),
        ("lax-dia-unit", Inequality(Term.dia_l(a), Term.box_l(Term.dia_l(a)))),
        ("lax-box-counit", Inequality(Term.dia_l(Term.box_l(a)), Term.box_l(a))),
        ("strict-counit-box", Inequality(Term.dia_s(Term.box_s(a)), Term.box_s(a))),
        ("strict-dia-unit", Inequality(Term.dia_s(a), Term.box_s(Term.dia_s(a)))),
    )


def aka5p_laws() -> tuple[tuple[str, object], ...]:
    """The four interaction laws of the stronger variety: lax images are
    strict-stable and strict images are lax-stable."""
    a = _A
    return (
        ("aka5p-lax-dia-open", Inequality(Term.dia_l(a), Term.box_s(Term.dia_l(a)))),
        ("aka5p-lax-box-stable", Inequality(Term.dia_s(Term.box_l(a)), Term.box_l(a))),
        ("aka5p-strict-box-dense", Inequality(Term.box_s(a), Term.dia_l(Term.box_s(a)))),
        ("aka5p-strict-dia-stable", Inequality(Term.box_l(Term.dia_s(a)), Term.dia_s(a))),
    )


def kia3s_law() -> QuasiInequality:
    """Strict operators jointly order-reflect."""
    a, b = _A, _B
    return QuasiInequality(
        (Inequality(Term.box_s(a), Term.box_s(b)),
         Inequality(Term.dia_s(a), Term.dia_s(b))),
        Inequality(a, b),
    )


def kia3l_law() -> QuasiInequality:
    """Lax operators jointly order-reflect. On algebras passing check_aka
    this forces both lax operators to be the identity."""
    a, b = _A, _B
    return QuasiInequality(
        (Inequality(Term.box_l(a), Term.box_l(b)),
         Inequality(Term.dia_l(a), Term.dia_l(b))),
        Inequality(a, b),
    )


def kia3l_single_law() -> Inequality:
    """Single-inequality form of the lax reflection law; equivalent to the
    quasi-inequality on every algebra passing check_aka."""
    a, b = _A, _B
    return Inequality(
        Term.meet(a, Term.box_l(b)),
        Term.join(Term.dia_l(a), b),
    )


def check_aka(m: ModalLattice, *, max_evals: int = DEFAULT_MAX_EVALS) -> Report:
    return _run_laws(m, core_laws(), max_evals)


def check_derived(m: ModalLattice, *, max_evals: int = DEFAULT_MAX_EVALS) -> Report:
    core = check_aka(m, max_evals=max_evals)
    if not core.ok:
        raise PreconditionError(
            "derived laws are only meaningful after the core laws hold",
            witness=core.failures()[0][0],
        )
    return _run_laws(m, derived_laws(), max_evals)


def check_aka5p(m: ModalLattice, *, max_evals: int = DEFAULT_MAX_EVALS) -> Report:
    return _run_laws(m, aka5p_laws(), max_evals)


def check_kia3s(m: ModalLattice, *, max_evals: int = DEFAULT_MAX_EVALS) -> Verdict:
    return check_quasi_inequality(m, kia3s_law(), max_evals=max_evals)


def check_kia3l(m: ModalLattice, *, max_evals: int = DEFAULT_MAX_EVALS) -> Verdict:
    return check_quasi_inequality(m, kia3l_law(), max_evals=max_evals)


# --------------------------------------------------------------------------
# direct construction


def aka_from_kernels(
    lat: Lattice,
    strict_kernel,
    lax_open,
) -> ModalLattice:
    """Build an algebra from its data: a bounded sublattice for the strict
    pair and a join-closed bottom-containing set of "open" elements whose
    induced interior preserves joins for the lax pair. Both conditions are
    validated; the result always passes check_aka."""
    kernel = sorted(set(strict_kernel))
    opens = sorted(set(lax_open))
    for name, elems in (("strict kernel", kernel), ("lax opens", opens)):
        for e in elems:
            if not 0 <= e < lat.n:
                raise StructuralError(f"{name} element out of range", witness=e)
    kset = set(kernel)
    if lat.bottom not in kset or lat.top not in kset:
        raise StructuralError("strict kernel must contain both bounds", witness=kernel)
    for x, y in itertools.combinations_with_replacement(kernel, 2):
        if lat.meet[x][y] not in kset:
            raise StructuralError("strict kernel is not meet-closed", witness=(x, y))
        if lat.join[x][y] not in kset:
            raise StructuralError("strict kernel is not join-closed", witness=(x, y))
    oset = set(opens)
    if lat.bottom not in oset:
        raise StructuralError("lax opens must contain the bottom", witness=opens)
    for x, y in itertools.combinations_with_replacement(opens, 2):
        if lat.join[x][y] not in oset:
            raise StructuralError("lax opens are not join-closed", witness=(x, y))

    def below_join(elems, a):
        out = lat.bottom
        for e in elems:
            if lat.leq(e, a):
                out = lat.join[out][e]
        return out

    def above_meet(elems, a):
        out = lat.top
        for e in elems:
            if lat.leq(a, e):
                out = lat.meet[out][e]
        return out

    box_s = tuple(below_join(kernel, a) for a in range(lat.n))
    dia_s = tuple(above_meet(kernel, a) for a in range(lat.n))
    dia_l = tuple(below_join(opens, a) for a in range(lat.n))
    # interior must distribute over joins, else there is no lax adjoint pair
    for x in range(lat.n):
        for y in range(lat.n):
            j = lat.join[x][y]
            if dia_l[j] != lat.join[dia_l[x]][dia_l[y]]:
                raise StructuralError(
                    "induced interior does not preserve joins", witness=(x, y)
                )
    box_l = []
    for b in range(lat.n):
        best = lat.bottom
        for x in range(lat.n):
            if lat.leq(dia_l[x], b):
                best = lat.join[best][x]
        box_l.append(best)
    return ModalLattice(lat, box_s, dia_s, tuple(box_l), dia_l)


# --------------------------------------------------------------------------
# kernels


@dataclass(frozen=True)
class KernelLattice:
    """Image of one operation: its elements (as outer indices, sorted), the
    induced lattice, and the projection sending each outer element to the
    kernel index of its image."""

    elements: tuple[int, ...]
    lattice: Lattice
    project: tuple[int, ...]


@dataclass(frozen=True)
class KernelReport:
    strict_interior: KernelLattice
    strict_closure: KernelLattice
    lax_interior: KernelLattice
    lax_closure: KernelLattice


def _kernel_of(lat: Lattice, table: tuple[int, ...], name: str) -> KernelLattice:
    elements = tuple(sorted(set(table)))
    index = {e: i for i, e in enumerate(elements)}
    k = len(elements)
    pairs = [
        (i, j) for i in range(k) for j in range(k) if lat.leq(elements[i], elements[j])
    ]
    sub = Lattice.from_le(k, pairs)
    # the operation table must compute the kernel's own meet/join: project
    # the outer meet/join of two kernel elements and compare
    for i in range(k):
        for j in range(k):
            via_op = table[lat.meet[elements[i]][elements[j]]]
            if via_op != elements[sub.meet[i][j]]:
                raise StructuralError(
                    f"{name} kernel meet disagrees with the projected meet",
                    witness=(elements[i], elements[j]),
                )
            via_op = table[lat.join[elements[i]][elements[j]]]
            if via_op != elements[sub.join[i][j]]:
                raise StructuralError(
                    f"{name} kernel join disagrees with the projected join",
                    witness=(elements[i], elements[j]),
                )
    if table[lat.top] != elements[sub.top] or table[lat.bottom] != elements[sub.bottom]:
        raise StructuralError(f"{name} kernel bounds disagree", witness=None)
    project = tuple(index[table[a]] for a in range(lat.n))
    return KernelLattice(elements, sub, project)


def kernel_report(m: ModalLattice) -> KernelReport:
    """The four operation images as lattices. Requires the core laws; each
    kernel's meet/join is computed two ways (restricted order vs projected
    outer operation) and must agree."""
    core = check_aka(m)
    if not core.ok:
        raise PreconditionError(
            "kernels are only lattices when the core laws hold",
            witness=core.failures()[0][0],
        )
    return KernelReport(
        strict_interior=_kernel_of(m.lattice, m.box_s, "strict interior"),
        strict_closure=_kernel_of(m.lattice, m.dia_s, "strict closure"),
        lax_interior=_kernel_of(m.lattice, m.dia_l, "lax interior"),
        lax_closure=_kernel_of(m.lattice, m.box_l, "lax closure"),
    )


# --------------------------------------------------------------------------
# five-sorted algebras


@dataclass(frozen=True)
class HeterogeneousAlgebra:
    """One outer lattice plus four kernel carriers, connected by eight maps.

    Naming: white maps go from a kernel into the outer lattice, black maps
    project the outer lattice onto a kernel. The *_i carriers play the
    interior role, the *_c carriers the closure role.
    """

    outer: Lattice
    strict_interior: Lattice
    strict_closure: Lattice
    lax_interior: Lattice
    lax_closure: Lattice
    white_i: tuple[int, ...]      # strict_interior -> outer
    black_sq_i: tuple[int, ...]   # outer -> strict_interior
    white_c: tuple[int, ...]      # strict_closure -> outer
    black_dia_c: tuple[int, ...]  # outer -> strict_closure
    bullet_i: tuple[int, ...]     # outer -> lax_interior
    wh_dia_i: tuple[int, ...]     # lax_interior -> outer
    bullet_c: tuple[int, ...]     # outer -> lax_closure
    wh_box_c: tuple[int, ...]     # lax_closure -> outer

    def __post_init__(self):
        shapes = {
            "white_i": (self.strict_interior.n, self.outer.n),
            "black_sq_i": (self.outer.n, self.strict_interior.n),
            "white_c": (self.strict_closure.n, self.outer.n),
            "black_dia_c": (self.outer.n, self.strict_closure.n),
            "bullet_i": (self.outer.n, self.lax_interior.n),
            "wh_dia_i": (self.lax_interior.n, self.outer.n),
            "bullet_c": (self.outer.n, self.lax_closure.n),
            "wh_box_c": (self.lax_closure.n, self.outer.n),
        }
        for name, (dom, cod) in shapes.items():
            table = tuple(getattr(self, name))
            object.__setattr__(self, name, table)
            if len(table) != dom:
                raise StructuralError(f"{name} has wrong domain size", witness=len(table))
            for v in table:
                if not 0 <= v < cod:
                    raise StructuralError(f"{name} value out of range", witness=v)

    def carriers(self) -> tuple[Lattice, ...]:
        return (
            self.outer,
            self.strict_interior,
            self.strict_closure,
            self.lax_interior,
            self.lax_closure,
        )


def _adjunction_verdict(f, g, dom: Lattice, cod: Lattice) -> Verdict:
    # f: dom -> cod, g: cod -> dom; f(x) <= y iff x <= g(y)
    checked = 0
    for x in range(dom.n):
        for y in range(cod.n):
            checked += 1
            if cod.leq(f[x], y) != dom.leq(x, g[y]):
                return Verdict(False, witness=(x, y), checked=checked)
    return Verdict(True, checked=checked)


def _retraction_verdict(back, forth) -> Verdict:
    # back(forth(x)) == x
    for x in range(len(forth)):
        if back[forth[x]] != x:
            return Verdict(False, witness=x, checked=x + 1)
    return Verdict(True, checked=len(forth))


KNOWN_SUBVARIETIES = ("aka5p", "kia3s", "kia3l")


def check_haka(h: HeterogeneousAlgebra, subvarieties=()) -> Report:
    """The heterogeneous laws: the four structural maps are bounded lattice
    homomorphisms, the four adjunctions hold, and each white/black pair
    retracts. Subvariety names from KNOWN_SUBVARIETIES add their laws."""
    for s in subvarieties:
        if s not in KNOWN_SUBVARIETIES:
            raise StructuralError("unknown subvariety", witness=s)
    lat = h.outer
    items: list[tuple[str, Verdict]] = []

    def hom_item(name, table, src, dst):
        ok, witness = is_bounded_hom(table, src, dst)
        items.append((name, Verdict(ok, witness=witness)))

    hom_item("white-i-hom", h.white_i, h.strict_interior, lat)
    hom_item("white-c-hom", h.white_c, h.strict_closure, lat)
    hom_item("bullet-i-hom", h.bullet_i, lat, h.lax_interior)
    hom_item("bullet-c-hom", h.bullet_c, lat, h.lax_closure)

    items.append(("white-i-adjoint",
                  _adjunction_verdict(h.white_i, h.black_sq_i, h.strict_interior, lat)))
    items.append(("black-dia-c-adjoint",
                  _adjunction_verdict(h.black_dia_c, h.white_c, lat, h.strict_closure)))
    items.append(("bullet-c-adjoint",
                  _adjunction_verdict(h.bullet_c, h.wh_box_c, lat, h.lax_closure)))
    items.append(("wh-dia-i-adjoint",
                  _adjunction_verdict(h.wh_dia_i, h.bullet_i, h.lax_interior, lat)))

    items.append(("strict-interior-retract",
                  _retraction_verdict(h.black_sq_i, h.white_i)))
    items.append(("strict-closure-retract",
                  _retraction_verdict(h.black_dia_c, h.white_c)))
    items.append(("lax-closure-retract",
                  _retraction_verdict(h.bullet_c, h.wh_box_c)))
    items.append(("lax-interior-retract",
                  _retraction_verdict(h.bullet_i, h.wh_dia_i)))

    if "aka5p" in subvarieties:
        def all_leq(name, pairs):
            for witness, (x, y) in pairs:
                if not lat.leq(x, y):
                    items.append((name, Verdict(False, witness=witness)))
                    return
            items.append((name, Verdict(True)))

        all_leq("haka5p-lax-dia-open", [
            (p, (h.wh_dia_i[p], h.white_i[h.black_sq_i[h.wh_dia_i[p]]]))
            for p in range(h.lax_interior.n)
        ])
        all_leq("haka5p-lax-box-stable", [
            (s, (h.white_c[h.black_dia_c[h.wh_box_c[s]]], h.wh_box_c[s]))
            for s in range(h.lax_closure.n)
        ])
        all_leq("haka5p-strict-box-dense", [
            (al, (h.white_i[al], h.wh_dia_i[h.bullet_i[h.white_i[al]]]))
            for al in range(h.strict_interior.n)
        ])
        all_leq("haka5p-strict-dia-stable", [
            (de, (h.wh_box_c[h.bullet_c[h.white_c[de]]], h.white_c[de]))
            for de in range(h.strict_closure.n)
        ])

    if "kia3s" in subvarieties:
        verdict = Verdict(True)
        for a in range(lat.n):
            for b in range(lat.n):
                if (
                    h.strict_interior.leq(h.black_sq_i[a], h.black_sq_i[b])
                    and h.strict_closure.leq(h.black_dia_c[a], h.black_dia_c[b])
                    and not lat.leq(a, b)
                ):
                    verdict = Verdict(False, witness=(a, b))
                    break
            if not verdict.ok:
                break
        items.append(("hkia3s", verdict))

    if "kia3l" in subvarieties:
        verdict = Verdict(True)
        box_route = tuple(h.wh_box_c[h.bullet_c[a]] for a in range(lat.n))
        dia_route = tuple(h.wh_dia_i[h.bullet_i[a]] for a in range(lat.n))
        for a in range(lat.n):
            for b in range(lat.n):
                if (
                    lat.leq(box_route[a], box_route[b])
                    and lat.leq(dia_route[a], dia_route[b])
                    and not lat.leq(a, b)
                ):
                    verdict = Verdict(False, witness=(a, b))
                    break
            if not verdict.ok:
                break
        items.append(("hkia3l", verdict))

    return Report(tuple(items))


def factorize(m: ModalLattice) -> HeterogeneousAlgebra:
    """Split an algebra passing check_aka into its four kernels plus maps.
    The output always passes check_haka (asserted)."""
    kr = kernel_report(m)  # PreconditionError when the core laws fail
    h = HeterogeneousAlgebra(
        outer=m.lattice,
        strict_interior=kr.strict_interior.lattice,
        strict_closure=kr.strict_closure.lattice,
        lax_interior=kr.lax_interior.lattice,
        lax_closure=kr.lax_closure.lattice,
        white_i=kr.strict_interior.elements,
        black_sq_i=kr.strict_interior.project,
        white_c=kr.strict_closure.elements,
        black_dia_c=kr.strict_closure.project,
        bullet_i=kr.lax_interior.project,
        wh_dia_i=kr.lax_interior.elements,
        bullet_c=kr.lax_closure.project,
        wh_box_c=kr.lax_closure.elements,
    )
    rep = check_haka(h)
    if not rep.ok:
        name, verdict = rep.failures()[0]
        raise StructuralError(
            f"factorization violated {name}", witness=verdict.witness
        )
    return h


def recompose(h: HeterogeneousAlgebra) -> ModalLattice:
    """Compose the maps back into four operations on the outer lattice.

    Requires check_haka; additionally validates the result with check_aka,
    because the heterogeneous laws do not force the composites to obey the
    one-sorted laws (the strict interior and closure can be unrelated)."""
    rep = check_haka(h)
    if not rep.ok:
        name, verdict = rep.failures()[0]
        raise PreconditionError(
            f"recompose needs the heterogeneous laws, {name} failed",
            witness=verdict.witness,
        )
    m = ModalLattice(
        lattice=h.outer,
        box_s=tuple(h.white_i[h.black_sq_i[a]] for a in range(h.outer.n)),
        dia_s=tuple(h.white_c[h.black_dia_c[a]] for a in range(h.outer.n)),
        box_l=tuple(h.wh_box_c[h.bullet_c[a]] for a in range(h.outer.n)),
        dia_l=tuple(h.wh_dia_i[h.bullet_i[a]] for a in range(h.outer.n)),
    )
    core = check_aka(m)
    if not core.ok:
        name, verdict = core.failures()[0]
        raise StructuralError(
            f"recomposed operators violate {name}", witness=verdict.witness
        )
    return m


# --------------------------------------------------------------------------
# perfect adjoints and correspondence


@dataclass(frozen=True)
class PerfectMaps:
    """The four optional adjoints: left adjoints of the white inclusions and
    adjoints of the bullet projections, when the minima/maxima exist."""

    black_dia_i: tuple[int, ...]  # outer -> strict_interior
    black_sq_c: tuple[int, ...]   # outer -> strict_closure
    wh_box_i: tuple[int, ...]     # lax_interior -> outer
    wh_dia_c: tuple[int, ...]     # lax_closure -> outer


def _least(cands, lat: Lattice, what, at):
    for c in cands:
        if all(lat.leq(c, d) for d in cands):
            return c
    raise PreconditionError(f"no least element for {what}", witness=at)


def _greatest(cands, lat: Lattice, what, at):
    for c in cands:
        if all(lat.leq(d, c) for d in cands):
            return c
    raise PreconditionError(f"no greatest element for {what}", witness=at)


def perfect_maps(h: HeterogeneousAlgebra) -> PerfectMaps:
    lat = h.outer
    black_dia_i = tuple(
        _least([al for al in range(h.strict_interior.n) if lat.leq(a, h.white_i[al])],
               h.strict_interior, "black-dia-i", a)
        for a in range(lat.n)
    )
    black_sq_c = tuple(
        _greatest([de for de in range(h.strict_closure.n) if lat.leq(h.white_c[de], a)],
                  h.strict_closure, "black-sq-c", a)
        for a in range(lat.n)
    )
    wh_box_i = tuple(
        _greatest([a for a in range(lat.n) if h.lax_interior.leq(h.bullet_i[a], p)],
                  lat, "wh-box-i", p)
        for p in range(h.lax_interior.n)
    )
    wh_dia_c = tuple(
        _least([a for a in range(lat.n) if h.lax_closure.leq(s, h.bullet_c[a])],
               lat, "wh-dia-c", s)
        for s in range(h.lax_closure.n)
    )
    return PerfectMaps(black_dia_i, black_sq_c, wh_box_i, wh_dia_c)


def check_correspondence(h: HeterogeneousAlgebra, pm: PerfectMaps | None = None) -> Report:
    """Both closure routes and both interior routes through the kernels must
    agree as maps on the outer lattice. Needs the perfect adjoints."""
    if pm is None:
        pm = perfect_maps(h)
    strict = Verdict(True)
    for a in range(h.outer.n):
        if h.white_i[pm.black_dia_i[a]] != h.white_c[h.black_dia_c[a]]:
            strict = Verdict(False, witness=a)
            break
    lax = Verdict(True)
    for a in range(h.outer.n):
        if pm.wh_box_i[h.bullet_i[a]] != h.wh_box_c[h.bullet_c[a]]:
            lax = Verdict(False, witness=a)
            break
    return Report((("strict-correspondence", strict), ("lax-correspondence", lax)))
