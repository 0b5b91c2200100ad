import random

import pytest

from garside import equal, germ_isomorphism, multiply, normal_form, parse_word
from garside.divided import (
    build_divided_germ,
    count_subdivisions,
    enumerate_subdivisions,
    ladders_between,
    subdivision_iso,
    theta_morphism,
    theta_object,
    theta_simple,
)
from garside.words import identity_nf, is_greedy

import oracles


def tuple_name(germ, f):
    return "(" + ",".join(germ.simple_name(s) for s in f) + ")"


def test_enumerate_counts_a2(a2):
    assert len(enumerate_subdivisions(a2, 1)) == 1
    assert len(enumerate_subdivisions(a2, 2)) == 6
    assert len(enumerate_subdivisions(a2, 3)) == 17
    assert len(enumerate_subdivisions(a2, 4)) == 36


def test_enumerate_matches_bruteforce(a2, rank2):
    for germ, m in [(a2, 2), (a2, 3), (rank2, 2)]:
        brute = sorted(
            tup
            for obj in germ.objects
            for tup in oracles.subdivision_tuples(germ, obj.id, m)
        )
        assert enumerate_subdivisions(germ, m) == brute
        counted = sum(count_subdivisions(germ, m).values())
        assert counted == len(brute)


def test_enumerate_parallel_deterministic(rank2):
    assert enumerate_subdivisions(rank2, 3, parallel=True) == enumerate_subdivisions(
        rank2, 3
    )


def test_single_subdivision_is_delta(a2):
    (obj,) = enumerate_subdivisions(a2, 1)
    assert obj == (a2.delta[0],)


def test_ladders_between_examples(a2, a2_div3):
    f = theta_object(a2, 0, 3)
    identity_ladder = [
        lad for lad in ladders_between(a2, f, f)
        if all(a2.is_identity(c) for c in lad.columns)
    ]
    assert len(identity_ladder) == 1
    g = tuple(a2.simple_named(n) for n in ("id@x", "s", "ts"))
    lads = ladders_between(a2, f, g)
    assert len(lads) == 1
    assert [a2.simple_name(c) for c in lads[0].columns] == ["id@x", "id@x", "s"]
    assert [a2.simple_name(d) for d in lads[0].diagonals(a2)] == ["id@x", "id@x", "ts"]
    # every object carries its shift ladder with columns (f_1, ..., f_m)
    for h in enumerate_subdivisions(a2, 3):
        shifted = tuple(h[1:]) + (a2.phi_simple[h[0]],)
        assert any(lad.columns == h for lad in ladders_between(a2, h, shifted))


def test_build_divided_m1_recovers_base(a2):
    dg = build_divided_germ(a2, 1)
    assert germ_isomorphism(dg.germ, a2) is not None


def test_build_divided_a2_3(a2_div3):
    assert len(a2_div3.objects) == 17
    assert a2_div3.germ.phi_order == 6


def test_divided_atom_graph_adjacency(a2, a2_div3):
    dg = a2_div3
    expected = {
        "(id@x,id@x,D)": {"(id@x,s,ts)", "(id@x,t,st)"},
        "(id@x,D,id@x)": {"(t,st,id@x)", "(s,ts,id@x)"},
        "(D,id@x,id@x)": {"(ts,id@x,t)", "(st,id@x,s)"},
    }
    for name, targets in expected.items():
        f = tuple(a2.simple_named(p) for p in name.strip("()").split(","))
        src = dg.object_of(f)
        outgoing = {
            tuple_name(a2, dg.ladder_of[atom].tgt)
            for atom in dg.germ.atoms
            if dg.germ.simples[atom].source == src
        }
        assert outgoing == targets


def test_build_divided_rank2(rank2):
    dg = build_divided_germ(rank2, 2)
    brute = sum(
        len(oracles.subdivision_tuples(rank2, obj.id, 2)) for obj in rank2.objects
    )
    assert len(dg.objects) == brute


def test_divided_phi_cycles_objects(a2, a2_div3):
    dg = a2_div3
    for i, f in enumerate(dg.objects):
        at = i
        for _ in range(3):
            at = dg.germ.phi_obj[at]
        assert dg.objects[at] == tuple(a2.phi_simple[s] for s in f)


def test_divided_dimension_stable(a2):
    from garside.nerve import garside_dimension

    base = garside_dimension(a2)
    for m in (1, 2, 3, 4):
        assert garside_dimension(build_divided_germ(a2, m).germ) == base


def test_fixed_divided_dimension_bound(a2, dual3):
    # opportunistic: m × dim(C_m fixed under its shift) ≤ dim(C fixed under φ),
    # checked whenever the fixed subgerms are non-empty
    from garside import phi_automorphism
    from garside.conjugacy import fixed_subgerm
    from garside.nerve import garside_dimension

    checked = 0
    for germ in (a2, dual3):
        base_fixed = fixed_subgerm(germ, phi_automorphism(germ))
        if base_fixed.is_empty:
            continue
        bound = garside_dimension(base_fixed.subgerm)
        for m in (1, 2, 3):
            dg = build_divided_germ(germ, m)
            rep = fixed_subgerm(dg.germ, phi_automorphism(dg.germ))
            if rep.is_empty:
                continue
            assert garside_dimension(rep.subgerm) * m <= bound
            checked += 1
    assert checked >= 1  # at least the m = 1 cases are non-empty


def test_theta_object_examples(a2, rank2):
    assert [a2.simple_name(s) for s in theta_object(a2, 0, 3)] == ["id@x", "id@x", "D"]
    assert [a2.simple_name(s) for s in theta_object(a2, 0, 1)] == ["D"]
    x = rank2.object_named("x")
    assert [rank2.simple_name(s) for s in theta_object(rank2, x, 2)] == ["id@x", "D_x"]


def test_theta_simple_functorial(a2, a2_div3):
    s, t, D = (a2.simple_named(n) for n in ("s", "t", "D"))
    ths, tht, thD = (theta_simple(a2_div3, sid) for sid in (s, t, D))
    comp = multiply(a2_div3.germ, multiply(a2_div3.germ, ths, tht), ths)
    assert equal(comp, thD)


def test_theta_m1_is_identity_functor(a2):
    dg = build_divided_germ(a2, 1)
    s = a2.simple_named("s")
    img = theta_simple(dg, s)
    assert img.canonical_length == 1
    lad = dg.ladder_of[img.factors[0]]
    assert lad.columns == (s,)


def test_theta2_of_delta_is_squared_garside(a2, a2_div2):
    D = a2.simple_named("D")
    img = theta_simple(a2_div2, D)
    assert img.factors == () and img.delta_exp == 2
    assert a2_div2.objects[img.source] == theta_object(a2, 0, 2)


def test_theta_morphism_identity_and_greedy(a2, a2_div3):
    img = theta_morphism(a2_div3, identity_nf(0))
    assert img == identity_nf(a2_div3.object_of(theta_object(a2, 0, 3)))
    f = parse_word(a2, "s t s t D^-1")
    img = theta_morphism(a2_div3, f)
    assert is_greedy(a2_div3.germ, img)


def test_theta_functorial_random_pairs(a2, a2_div2, a2_div3):
    rng = random.Random(7)
    sids = [s.id for s in a2.simples]
    for dg in (a2_div2, a2_div3):
        for _ in range(50):
            w1 = [rng.choice(sids) for _ in range(rng.randint(0, 3))]
            w2 = [rng.choice(sids) for _ in range(rng.randint(0, 3))]
            k1, k2 = rng.randint(-1, 1), rng.randint(-1, 1)
            f = normal_form(a2, w1, k1) if w1 else parse_word(a2, f"@x D^{k1}")
            g = normal_form(a2, w2, k2) if w2 else parse_word(a2, f"@x D^{k2}")
            fg = multiply(a2, f, g)
            lhs = theta_morphism(dg, fg)
            rhs = multiply(dg.germ, theta_morphism(dg, f), theta_morphism(dg, g))
            assert equal(lhs, rhs)


def test_theta_preserves_equality_samples(a2, a2_div2):
    pairs = [("s t s", "t s t"), ("s s t s", "s t s t"), ("s t D^-1 s", "s t D^-1 s")]
    for w1, w2 in pairs:
        f, g = parse_word(a2, w1), parse_word(a2, w2)
        assert equal(f, g)
        assert equal(theta_morphism(a2_div2, f), theta_morphism(a2_div2, g))


@pytest.mark.parametrize("e,q", [(2, 2), (2, 3), (3, 2)])
def test_subdivision_iso(a2, e, q):
    iso = subdivision_iso(a2, e, q)
    assert len(iso.eq_divided.objects) == len(iso.iterated.objects)
    assert len(iso.eq_divided.germ.simples) == len(iso.iterated.germ.simples)


def test_subdivision_iso_identity_case(a2):
    iso = subdivision_iso(a2, 1, 3)
    assert len(iso.eq_divided.objects) == 17
    assert sorted(iso.object_map) == sorted(iso.object_map.values())


def test_subdivision_iso_fixed_subgerm_check(a2):
    # φ_2^2-fixed part of C_2 matches the 2-divided germ of A_2^φ
    iso = subdivision_iso(a2, 2, 1)
    assert iso.fixed_check == "verified"
    iso2 = subdivision_iso(a2, 2, 3)
    assert iso2.fixed_check.startswith("skipped")


def test_enumerate_matches_count_on_builtins(dual3, chamber3):
    for germ in (dual3, chamber3):
        for m in range(1, 7):
            assert len(enumerate_subdivisions(germ, m)) == sum(
                count_subdivisions(germ, m).values()
            )


def test_divided_nerve_counts_are_base_subdivisions(a2, a2_div2, a2_div3):
    # (k-1)-simplices of the divided nerve are km-fold subdivisions of the base
    from garside.nerve import enumerate_simplices

    for dg in (a2_div2, a2_div3):
        for k in (1, 2, 3):
            assert len(enumerate_simplices(dg.germ, k - 1)) == sum(
                count_subdivisions(a2, k * dg.m).values()
            )


def test_subdivision_counts_agree_with_iterated(a2):
    for e, q in [(2, 2), (2, 3), (3, 2)]:
        dq = build_divided_germ(a2, q)
        assert sum(count_subdivisions(a2, e * q).values()) == sum(
            count_subdivisions(dq.germ, e).values()
        )


def test_divided_germ_of_dual3(dual3):
    dg = build_divided_germ(dual3, 2)
    assert len(dg.objects) == sum(count_subdivisions(dual3, 2).values())
    assert dg.germ.phi_order in (3, 6)
    assert (2 * dual3.phi_order) % dg.germ.phi_order == 0
