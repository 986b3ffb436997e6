"""Modal operator layer: term evaluation, brute-force law checking, and the
operators induced on a concept lattice by the derived relations."""

import itertools

import pytest

from kentkit.contexts import BinaryRelation, FormalContext, enumerate_concepts
from kentkit.errors import CapacityError, EvalError, PreconditionError
from kentkit.lattice import Lattice
from kentkit.modal import (
    Inequality,
    ModalLattice,
    QuasiInequality,
    Term,
    check_inequality,
    check_quasi_inequality,
    complex_algebra,
    complex_algebra_parts,
    eval_term,
    identity_modal,
    modal_box,
    modal_diamond,
    modal_diamond_xa,
)
from kentkit.rough import RoughFormalContext, derive_lax, derive_strict

from test_contexts import oracle_one_image, oracle_zero_image
from test_rough import block_amenable_rfc


def chain_modal(n):
    return identity_modal(Lattice.chain(n))


def test_eval_term_hand_values():
    # 3-chain with boxL collapsing everything to the top
    lat = Lattice.chain(3)
    m = ModalLattice(lat, (0, 1, 2), (0, 1, 2), (2, 2, 2), (0, 1, 2))
    t = Term.box_l(Term.meet(Term.var("a"), Term.var("b")))
    assert eval_term(m, t, {"a": 1, "b": 0}) == 2
    assert eval_term(m, Term.join(Term.var("a"), Term.top()), {"a": 0}) == 2
    assert eval_term(m, Term.bot(), {}) == 0


def test_eval_unbound_variable():
    m = chain_modal(2)
    with pytest.raises(EvalError):
        eval_term(m, Term.var("zz"), {"a": 0})


def test_modal_lattice_rejects_bad_tables():
    lat = Lattice.chain(2)
    with pytest.raises(Exception):
        ModalLattice(lat, (0,), (0, 1), (0, 1), (0, 1))
    with pytest.raises(Exception):
        ModalLattice(lat, (0, 5), (0, 1), (0, 1), (0, 1))


def test_check_inequality_valid_on_chain():
    m = chain_modal(4)
    ineq = Inequality(
        Term.meet(Term.var("a"), Term.var("b")),
        Term.join(Term.var("a"), Term.var("b")),
    )
    v = check_inequality(m, ineq)
    assert v.ok
    assert v.checked == 16


def test_check_inequality_witness_is_real():
    # distributivity fails on the diamond lattice; replay the witness
    m = identity_modal(Lattice.diamond_m3())
    lhs = Term.meet(Term.var("x"), Term.join(Term.var("y"), Term.var("z")))
    rhs = Term.join(
        Term.meet(Term.var("x"), Term.var("y")),
        Term.meet(Term.var("x"), Term.var("z")),
    )
    v = check_inequality(m, Inequality(lhs, rhs))
    assert not v.ok
    a = eval_term(m, lhs, v.witness)
    b = eval_term(m, rhs, v.witness)
    assert not m.lattice.leq(a, b)


def test_check_inequality_capacity():
    m = chain_modal(5)
    vs = [Term.var(f"v{i}") for i in range(11)]
    big = vs[0]
    for t in vs[1:]:
        big = Term.meet(big, t)
    with pytest.raises(CapacityError):
        check_inequality(m, Inequality(big, Term.top()))


def test_quasi_inequality_modus_ponens_shape():
    # on a chain: a <= b and b <= c imply a <= c (just transitivity)
    m = chain_modal(3)
    q = QuasiInequality(
        premises=(
            Inequality(Term.var("a"), Term.var("b")),
            Inequality(Term.var("b"), Term.var("c")),
        ),
        conclusion=Inequality(Term.var("a"), Term.var("c")),
    )
    v = check_quasi_inequality(m, q)
    assert v.ok and v.checked == 27


def test_quasi_inequality_failure_witness():
    # premises vacuous, conclusion false somewhere
    m = chain_modal(2)
    q = QuasiInequality(
        premises=(),
        conclusion=Inequality(Term.var("a"), Term.bot()),
    )
    v = check_quasi_inequality(m, q)
    assert not v.ok
    assert v.witness == {"a": 1}


# --------------------------------------------------------------------------
# concept-level operators


def oracle_box(rel, cl, c):
    extent = oracle_zero_image(rel, set(cl.concepts[c].intent))
    for i, conc in enumerate(cl.concepts):
        if set(conc.extent) == extent:
            return i
    raise AssertionError("box image missing from the lattice")


def oracle_diamond(rel, cl, c):
    intent = oracle_one_image(rel, set(cl.concepts[c].extent))
    for i, conc in enumerate(cl.concepts):
        if set(conc.intent) == intent:
            return i
    raise AssertionError("diamond image missing from the lattice")


def test_modal_ops_match_oracle_on_amenable_instances():
    import random

    rng = random.Random(4401)
    for _ in range(40):
        g = block_amenable_rfc(rng)
        cl, m = complex_algebra_parts(g)
        r = derive_lax(g)
        s = derive_strict(g)
        for c in range(len(cl.concepts)):
            assert m.box_s[c] == oracle_box(s, cl, c)
            assert m.dia_s[c] == oracle_diamond(s, cl, c)
            assert m.box_l[c] == oracle_box(r, cl, c)
            assert m.dia_l[c] == oracle_diamond(r, cl, c)


def test_modal_ops_reject_incompatible_relation():
    # extents here are {0} and {0,1} only, so a relation whose column
    # preimage is {1} cannot be compatible
    ctx = FormalContext(2, 2, BinaryRelation(2, 2, frozenset({(0, 0), (0, 1), (1, 1)})))
    cl = enumerate_concepts(ctx)
    bad = BinaryRelation(2, 2, frozenset({(1, 0), (1, 1)}))
    with pytest.raises(PreconditionError):
        modal_box(bad, cl, 0)
    with pytest.raises(PreconditionError):
        modal_diamond(bad, cl, 0)


def test_modal_diamond_xa_identity_relation():
    # with the transpose of the incidence itself, the diamond fixes concepts
    ctx = FormalContext(2, 2, BinaryRelation(2, 2, frozenset({(0, 0), (1, 1)})))
    cl = enumerate_concepts(ctx)
    rel = BinaryRelation(2, 2, frozenset({(0, 0), (1, 1)}))
    for c in range(len(cl.concepts)):
        assert modal_diamond_xa(rel, cl, c) == c


def test_complex_algebra_requires_amenable():
    # identity-incompatible partition: objects 0,1 share a class but differ on features
    ctx = FormalContext(2, 1, BinaryRelation(2, 1, frozenset({(0, 0)})))
    g = RoughFormalContext(ctx, (frozenset({0, 1}),))
    with pytest.raises(PreconditionError):
        complex_algebra(g)


def test_complex_algebra_trivial_partition_gives_matching_pairs():
    # singleton classes over a diagonal incidence: every singleton object
    # set is an extent, the partition is compatible, and both derived
    # relations coincide with the incidence
    ctx = FormalContext(3, 3, BinaryRelation(3, 3, frozenset({(0, 0), (1, 1), (2, 2)})))
    g = RoughFormalContext(ctx, (frozenset({0}), frozenset({1}), frozenset({2})))
    cl, m = complex_algebra_parts(g)
    assert m.box_s == m.box_l
    assert m.dia_s == m.dia_l
    assert derive_lax(g).pairs == ctx.incidence.pairs
    assert derive_strict(g).pairs == ctx.incidence.pairs


def test_complex_algebra_operators_are_monotone():
    import random

    rng = random.Random(77)
    for _ in range(25):
        g = block_amenable_rfc(rng)
        cl, m = complex_algebra_parts(g)
        lat = m.lattice
        for a in range(lat.n):
            for b in range(lat.n):
                if lat.leq(a, b):
                    assert lat.leq(m.box_s[a], m.box_s[b])
                    assert lat.leq(m.dia_s[a], m.dia_s[b])
                    assert lat.leq(m.box_l[a], m.box_l[b])
                    assert lat.leq(m.dia_l[a], m.dia_l[b])
