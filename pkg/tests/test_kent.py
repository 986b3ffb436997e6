"""Operator algebra laws, kernels, factorization, and recomposition.

The oracle for every law checker is a raw nested loop over the operation
tables, written independently of the Term machinery.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kentkit.errors import PreconditionError, StructuralError
from kentkit.kent import (
    HeterogeneousAlgebra,
    aka_from_kernels,
    check_aka,
    check_aka5p,
    check_correspondence,
    check_derived,
    check_haka,
    check_kia3l,
    check_kia3s,
    factorize,
    kernel_report,
    perfect_maps,
    recompose,
)
from kentkit.lattice import Lattice
from kentkit.modal import ModalLattice, identity_modal


# --------------------------------------------------------------------------
# oracles: direct quantifier loops over the tables


def oracle_core_failures(m):
    lat = m.lattice
    n = lat.n
    leq = lat.leq
    bs, ds, bl, dl = m.box_s, m.dia_s, m.box_l, m.dia_l
    bad = set()
    for a in range(n):
        if not leq(bs[a], a):
            bad.add("strict-box-contractive")
        if not leq(a, ds[a]):
            bad.add("strict-dia-expansive")
        if not leq(a, bl[a]):
            bad.add("lax-box-expansive")
        if not leq(dl[a], a):
            bad.add("lax-dia-contractive")
        if not leq(bs[a], bs[bs[a]]):
            bad.add("strict-box-transitive")
        if not leq(ds[ds[a]], ds[a]):
            bad.add("strict-dia-transitive")
        if not leq(bl[bl[a]], bl[a]):
            bad.add("lax-box-transitive")
        if not leq(dl[a], dl[dl[a]]):
            bad.add("lax-dia-transitive")
        for b in range(n):
            if leq(ds[a], b) and not leq(a, bs[b]):
                bad.add("strict-adjunction-fwd")
            if leq(a, bs[b]) and not leq(ds[a], b):
                bad.add("strict-adjunction-back")
            if leq(dl[a], b) and not leq(a, bl[b]):
                bad.add("lax-adjunction-fwd")
            if leq(a, bl[b]) and not leq(dl[a], b):
                bad.add("lax-adjunction-back")
            if bs[lat.meet[a][b]] != lat.meet[bs[a]][bs[b]]:
                bad.add("strict-box-meets")
            if ds[lat.join[a][b]] != lat.join[ds[a]][ds[b]]:
                bad.add("strict-dia-joins")
            if bl[lat.meet[a][b]] != lat.meet[bl[a]][bl[b]]:
                bad.add("lax-box-meets")
            if dl[lat.join[a][b]] != lat.join[dl[a]][dl[b]]:
                bad.add("lax-dia-joins")
    if bs[lat.top] != lat.top:
        bad.add("strict-box-top")
    if ds[lat.bottom] != lat.bottom:
        bad.add("strict-dia-bottom")
    if bl[lat.top] != lat.top:
        bad.add("lax-box-top")
    if dl[lat.bottom] != lat.bottom:
        bad.add("lax-dia-bottom")
    return bad


def oracle_kia3l_ok(m):
    lat = m.lattice
    for a in range(lat.n):
        for b in range(lat.n):
            if (
                lat.leq(m.box_l[a], m.box_l[b])
                and lat.leq(m.dia_l[a], m.dia_l[b])
                and not lat.leq(a, b)
            ):
                return False
    return True


def oracle_kia3s_ok(m):
    lat = m.lattice
    for a in range(lat.n):
        for b in range(lat.n):
            if (
                lat.leq(m.box_s[a], m.box_s[b])
                and lat.leq(m.dia_s[a], m.dia_s[b])
                and not lat.leq(a, b)
            ):
                return False
    return True


# --------------------------------------------------------------------------
# generators


BASE_LATTICES = [
    Lattice.chain(2),
    Lattice.chain(3),
    Lattice.chain(4),
    Lattice.chain(5),
    Lattice.boolean(2),
    Lattice.diamond_m3(),
    Lattice.pentagon_n5(),
    Lattice.product(Lattice.chain(2), Lattice.chain(3)),
]


def close_sublattice(lat, seed_elems):
    elems = set(seed_elems) | {lat.top, lat.bottom}
    while True:
        new = set()
        for x in elems:
            for y in elems:
                new.add(lat.meet[x][y])
                new.add(lat.join[x][y])
        if new <= elems:
            return sorted(elems)
        elems |= new


def join_close(lat, seed_elems):
    elems = set(seed_elems) | {lat.bottom}
    while True:
        new = {lat.join[x][y] for x in elems for y in elems}
        if new <= elems:
            return sorted(elems)
        elems |= new


def random_valid_aka(rng):
    lat = rng.choice(BASE_LATTICES)
    kernel = close_sublattice(lat, rng.sample(range(lat.n), rng.randint(0, lat.n // 2)))
    for _ in range(8):
        opens = join_close(lat, rng.sample(range(lat.n), rng.randint(0, lat.n // 2)))
        try:
            return aka_from_kernels(lat, kernel, opens)
        except StructuralError:
            continue
    return aka_from_kernels(lat, kernel, range(lat.n))


def random_tables(rng, lat):
    return ModalLattice(
        lat,
        tuple(rng.randrange(lat.n) for _ in range(lat.n)),
        tuple(rng.randrange(lat.n) for _ in range(lat.n)),
        tuple(rng.randrange(lat.n) for _ in range(lat.n)),
        tuple(rng.randrange(lat.n) for _ in range(lat.n)),
    )


def three_chain_gapped_lax():
    # opens {bottom, top}: the lax pair moves the middle element
    return aka_from_kernels(Lattice.chain(3), range(3), [0, 2])


# --------------------------------------------------------------------------
# law checking


def test_check_aka_matches_oracle_on_noise():
    rng = random.Random(90210)
    for _ in range(120):
        m = random_tables(rng, rng.choice(BASE_LATTICES))
        rep = check_aka(m)
        bad = oracle_core_failures(m)
        assert {name for name, v in rep.items if not v.ok} == bad


def test_check_aka_accepts_constructed_algebras():
    rng = random.Random(1231)
    for _ in range(60):
        m = random_valid_aka(rng)
        rep = check_aka(m)
        assert rep.ok, rep.failures()


def test_three_chain_gapped_lax_tables():
    m = three_chain_gapped_lax()
    assert m.box_s == (0, 1, 2)
    assert m.dia_s == (0, 1, 2)
    assert m.dia_l == (0, 0, 2)
    assert m.box_l == (1, 1, 2)
    assert check_aka(m).ok


def test_aka_from_kernels_rejects_bad_data():
    lat = Lattice.boolean(2)
    # this kernel + opens combination is fine
    assert check_aka(aka_from_kernels(lat, [0, 1, 3], [0, 1, 2, 3])).ok
    with pytest.raises(StructuralError):
        aka_from_kernels(lat, [0, 1, 2], [0])  # kernel misses the top
    with pytest.raises(StructuralError):
        aka_from_kernels(lat, [0, 3], [0, 1, 2])  # opens not join-closed
    with pytest.raises(StructuralError):
        # join-closed opens whose interior still fails join preservation:
        # two atoms interior to the bottom, their join interior to the top
        aka_from_kernels(Lattice.diamond_m3(), [0, 4], [0, 1, 4])
    with pytest.raises(StructuralError):
        aka_from_kernels(lat, [0, 3], [1, 3])  # opens without bottom


def test_check_derived_holds_on_valid_algebras():
    rng = random.Random(555)
    for _ in range(60):
        m = random_valid_aka(rng)
        rep = check_derived(m)
        assert rep.ok, rep.failures()


def test_check_derived_requires_core():
    bad = ModalLattice(Lattice.chain(2), (1, 1), (0, 1), (0, 1), (0, 1))
    with pytest.raises(PreconditionError):
        check_derived(bad)


def test_kia3_checkers_match_oracles():
    rng = random.Random(8080)
    for _ in range(80):
        m = random_tables(rng, rng.choice(BASE_LATTICES))
        assert check_kia3s(m).ok == oracle_kia3s_ok(m)
        assert check_kia3l(m).ok == oracle_kia3l_ok(m)


def test_kia3l_collapse_on_valid_algebras():
    # among lawful algebras, the lax reflection law holds exactly when both
    # lax operations are the identity
    rng = random.Random(6161)
    seen_nontrivial = 0
    for _ in range(80):
        m = random_valid_aka(rng)
        ident = tuple(range(m.lattice.n))
        expect = m.box_l == ident and m.dia_l == ident
        assert check_kia3l(m).ok == expect
        if not expect:
            seen_nontrivial += 1
    assert seen_nontrivial >= 10


def test_kia3l_frozen_witness():
    m = three_chain_gapped_lax()
    v = check_kia3l(m)
    assert not v.ok
    # replay: premises hold, conclusion fails
    a, b = v.witness["a"], v.witness["b"]
    lat = m.lattice
    assert lat.leq(m.box_l[a], m.box_l[b])
    assert lat.leq(m.dia_l[a], m.dia_l[b])
    assert not lat.leq(a, b)


def test_kia3s_fails_on_collapsed_kernel():
    m = aka_from_kernels(Lattice.boolean(2), [0, 3], range(4))
    assert not check_kia3s(m).ok
    assert check_kia3l(m).ok


def test_aka5p_known_instances():
    assert check_aka5p(identity_modal(Lattice.boolean(2))).ok
    # nontrivial lax pair over an identity strict pair: the laws with the
    # lax operator outermost fail (the middle element is moved)
    rep = check_aka5p(three_chain_gapped_lax())
    assert rep.verdict("aka5p-lax-dia-open").ok
    assert rep.verdict("aka5p-lax-box-stable").ok
    assert not rep.verdict("aka5p-strict-box-dense").ok
    assert not rep.verdict("aka5p-strict-dia-stable").ok
    # two-element strict kernel with identity lax: openness fails
    m = aka_from_kernels(Lattice.boolean(2), [0, 3], range(4))
    rep = check_aka5p(m)
    assert not rep.verdict("aka5p-lax-dia-open").ok


# --------------------------------------------------------------------------
# kernels and factorization


def test_kernel_report_frozen():
    m = three_chain_gapped_lax()
    kr = kernel_report(m)
    assert kr.strict_interior.elements == (0, 1, 2)
    assert kr.strict_closure.elements == (0, 1, 2)
    assert kr.lax_interior.elements == (0, 2)
    assert kr.lax_closure.elements == (1, 2)
    assert kr.lax_interior.lattice.n == 2
    assert kr.lax_closure.project == (0, 0, 1)


def test_kernel_report_requires_core():
    bad = ModalLattice(Lattice.chain(2), (1, 1), (0, 1), (0, 1), (0, 1))
    with pytest.raises(PreconditionError):
        kernel_report(bad)


def test_factorize_roundtrip_identity():
    rng = random.Random(727272)
    for _ in range(60):
        m = random_valid_aka(rng)
        h = factorize(m)
        assert check_haka(h).ok
        back = recompose(h)
        assert back == m


def test_factorize_carrier_sizes():
    m = three_chain_gapped_lax()
    h = factorize(m)
    assert h.outer.n == 3
    assert h.strict_interior.n == 3
    assert h.strict_closure.n == 3
    assert h.lax_interior.n == 2
    assert h.lax_closure.n == 2
    assert h.wh_dia_i == (0, 2)
    assert h.wh_box_c == (1, 2)
    assert h.bullet_i == (0, 0, 1)
    assert h.bullet_c == (0, 0, 1)


def gap_algebra():
    # passes every heterogeneous law, yet the strict kernels are unrelated:
    # interior fixes {0,3}, closure fixes {0,1,3}, lax side is the identity
    lat = Lattice.boolean(2)
    two = Lattice.from_le(2, [(0, 0), (0, 1), (1, 1)])
    three = Lattice.chain(3)
    ident = tuple(range(4))
    return HeterogeneousAlgebra(
        outer=lat,
        strict_interior=two,
        strict_closure=three,
        lax_interior=lat,
        lax_closure=lat,
        white_i=(0, 3),
        black_sq_i=(0, 0, 0, 1),
        white_c=(0, 1, 3),
        black_dia_c=(0, 1, 2, 2),
        bullet_i=ident,
        wh_dia_i=ident,
        bullet_c=ident,
        wh_box_c=ident,
    )


def test_heterogeneous_laws_do_not_force_recomposability():
    h = gap_algebra()
    assert check_haka(h).ok
    with pytest.raises(StructuralError) as exc:
        recompose(h)
    assert exc.value.witness is not None


def test_gap_algebra_fails_correspondence():
    h = gap_algebra()
    rep = check_correspondence(h)
    assert not rep.verdict("strict-correspondence").ok
    assert rep.verdict("strict-correspondence").witness in (1, 2)


def test_recompose_requires_heterogeneous_laws():
    h = gap_algebra()
    broken = HeterogeneousAlgebra(
        outer=h.outer,
        strict_interior=h.strict_interior,
        strict_closure=h.strict_closure,
        lax_interior=h.lax_interior,
        lax_closure=h.lax_closure,
        white_i=(3, 0),  # not monotone, adjunction cannot hold
        black_sq_i=h.black_sq_i,
        white_c=h.white_c,
        black_dia_c=h.black_dia_c,
        bullet_i=h.bullet_i,
        wh_dia_i=h.wh_dia_i,
        bullet_c=h.bullet_c,
        wh_box_c=h.wh_box_c,
    )
    assert not check_haka(broken).ok
    with pytest.raises(PreconditionError):
        recompose(broken)


def test_perfect_maps_on_factorizations():
    rng = random.Random(31337)
    for _ in range(40):
        m = random_valid_aka(rng)
        h = factorize(m)
        pm = perfect_maps(h)
        # the strict kernels coincide, so the missing black maps are the
        # corestrictions of the opposite strict operation
        assert tuple(h.white_i[pm.black_dia_i[a]] for a in range(m.lattice.n)) == m.dia_s
        assert tuple(h.white_c[pm.black_sq_c[a]] for a in range(m.lattice.n)) == m.box_s
        # and the missing white maps factor through the lax operations
        assert pm.wh_box_i == tuple(m.box_l[e] for e in h.wh_dia_i)
        assert pm.wh_dia_c == tuple(m.dia_l[e] for e in h.wh_box_c)
        assert check_correspondence(h, pm).ok


def test_perfect_maps_can_fail():
    lat = Lattice.chain(2)
    sq = Lattice.boolean(2)
    h = HeterogeneousAlgebra(
        outer=lat,
        strict_interior=sq,
        strict_closure=lat,
        lax_interior=lat,
        lax_closure=lat,
        white_i=(0, 1, 1, 1),
        black_sq_i=(0, 3),
        white_c=(0, 1),
        black_dia_c=(0, 1),
        bullet_i=(0, 1),
        wh_dia_i=(0, 1),
        bullet_c=(0, 1),
        wh_box_c=(0, 1),
    )
    with pytest.raises(PreconditionError):
        perfect_maps(h)


def test_check_haka_subvarieties():
    m = three_chain_gapped_lax()
    h = factorize(m)
    rep = check_haka(h, subvarieties=("aka5p", "kia3s", "kia3l"))
    assert rep.verdict("hkia3s").ok
    assert not rep.verdict("hkia3l").ok
    # strict side is the identity, so all four interaction laws hold
    assert rep.verdict("haka5p-lax-dia-open").ok
    with pytest.raises(StructuralError):
        check_haka(h, subvarieties=("nonsense",))


def test_haka_subvariety_checks_match_one_sorted_checks():
    rng = random.Random(4242)
    for _ in range(40):
        m = random_valid_aka(rng)
        h = factorize(m)
        rep = check_haka(h, subvarieties=("aka5p", "kia3s", "kia3l"))
        assert rep.verdict("hkia3s").ok == check_kia3s(m).ok
        assert rep.verdict("hkia3l").ok == check_kia3l(m).ok
        five = all(
            rep.verdict(n).ok
            for n in (
                "haka5p-lax-dia-open",
                "haka5p-lax-box-stable",
                "haka5p-strict-box-dense",
                "haka5p-strict-dia-stable",
            )
        )
        assert five == check_aka5p(m).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.randoms(use_true_random=False))
def test_chain_algebras_roundtrip(n, rng):
    lat = Lattice.chain(n)
    opens = join_close(lat, rng.sample(range(n), rng.randint(0, n - 1)))
    kernel = close_sublattice(lat, rng.sample(range(n), rng.randint(0, n - 1)))
    m = aka_from_kernels(lat, kernel, opens)
    assert check_aka(m).ok
    assert recompose(factorize(m)) == m
