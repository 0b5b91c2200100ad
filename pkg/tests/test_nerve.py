from fractions import Fraction

import pytest

from garside import parse_germ, validate
from garside.divided import enumerate_subdivisions
from garside.germ import GermError
from garside.nerve import (
    NerveSimplex,
    ZPolynomial,
    atom_graph_dot,
    check_cyclic_identities,
    count_factorizations,
    cover_ball,
    cover_ball_dot,
    enumerate_nondegenerate,
    enumerate_simplices,
    face_zero,
    fit_z_polynomial,
    garside_dimension,
    nerve_export_lines,
    special_degeneracy,
)

import oracles


def test_garside_dimension(a2, rank2, free_loop, artin4):
    assert garside_dimension(a2) == 3
    assert garside_dimension(rank2) == 3
    assert garside_dimension(free_loop) == 1
    assert garside_dimension(artin4) == 6


def test_dimension_identity_only_germ():
    germ = validate(parse_germ("garside-germ v1\nobject x\n"))
    assert garside_dimension(germ) == 0


def test_nondegenerate_counts_a2(a2):
    counts = [len(enumerate_nondegenerate(a2, n)) for n in range(5)]
    assert counts == [1, 5, 6, 2, 0]
    assert sum((-1) ** n * c for n, c in enumerate(counts)) == 0


def test_nondegenerate_are_strict_chains(a2):
    for n in range(4):
        for sx in enumerate_nondegenerate(a2, n):
            prefix = a2.identity[sx.basepoint]
            seen = {prefix}
            for sid in sx.factors:
                prefix = a2.product_of(prefix, sid)
                assert prefix is not None and prefix not in seen
                seen.add(prefix)


def test_rank2_counts_match_chain_oracle(rank2):
    # brute-force strict chain counting per basepoint
    def chains(oid, n):
        dx = rank2.delta[oid]
        out = [[rank2.identity[oid]]]
        for _ in range(n):
            out = [
                ch + [v]
                for ch in out
                for v in rank2.by_source[oid]
                if v != ch[-1]
                and oracles.divides(rank2, ch[-1], v)
                and oracles.divides(rank2, v, dx)
            ]
        return len(out)

    counts = [len(enumerate_nondegenerate(rank2, n)) for n in range(4)]
    assert counts == [
        sum(chains(obj.id, n) for obj in rank2.objects) for n in range(4)
    ]
    assert sum((-1) ** n * c for n, c in enumerate(counts)) == 0


def test_special_degeneracy_examples(a2):
    s, t = a2.simple_named("s"), a2.simple_named("t")
    got = special_degeneracy(a2, NerveSimplex(0, (s, t)))
    assert [a2.simple_name(x) for x in got.factors] == ["s", "t", "s"]
    got = face_zero(a2, NerveSimplex(0, (s, t, s)))
    assert [a2.simple_name(x) for x in got.factors] == ["t", "s"]
    got = special_degeneracy(a2, NerveSimplex(0, ()))
    assert [a2.simple_name(x) for x in got.factors] == ["D"]


def test_face_zero_rebases(rank2):
    ax = rank2.simple_named("a_x")
    ay = rank2.simple_named("a_y")
    got = face_zero(rank2, NerveSimplex(rank2.object_named("x"), (ax, ay)))
    assert got.basepoint == rank2.object_named("y")


def test_special_degeneracy_image_is_subdivisions(a2):
    for n in (1, 2):
        image = {
            special_degeneracy(a2, sx).factors for sx in enumerate_simplices(a2, n)
        }
        assert image == set(enumerate_subdivisions(a2, n + 1))


@pytest.mark.parametrize("germ_name", ["a2", "dual3", "free_loop", "rank2"])
def test_cyclic_identities(germ_name, request):
    germ = request.getfixturevalue(germ_name)
    report = check_cyclic_identities(germ, 3)
    assert report.ok
    assert report.checked > 0


def test_double_shift_on_atom(a2):
    s = a2.simple_named("s")
    cur = NerveSimplex(0, (s,))
    for _ in range(2):
        cur = face_zero(a2, special_degeneracy(a2, cur))
    assert [a2.simple_name(x) for x in cur.factors] == ["t"]


def test_count_factorizations(a2, rank2):
    assert [sum(count_factorizations(a2, r).values()) for r in (1, 2, 3, 4)] == [1, 6, 17, 36]
    assert sum(count_factorizations(a2, 1).values()) == len(a2.objects)
    assert sum(count_factorizations(rank2, 1).values()) == len(rank2.objects)
    # counting agrees with the raw cartesian oracle
    for r in (2, 3):
        brute = sum(
            len(oracles.subdivision_tuples(rank2, obj.id, r)) for obj in rank2.objects
        )
        assert sum(count_factorizations(rank2, r).values()) == brute


def test_count_consistency_with_divided(a2):
    from garside.divided import build_divided_germ

    dq = build_divided_germ(a2, 3)
    for e in (1, 2):
        assert sum(count_factorizations(dq.germ, e).values()) == sum(
            count_factorizations(a2, 3 * e).values()
        )


def test_fit_z_polynomial_a2(a2):
    z = fit_z_polynomial(a2, 5)
    assert z.degree == 3
    assert [z(m) for m in (1, 2, 3, 4, 5)] == [1, 6, 17, 36, 65]
    assert z(6) == sum(count_factorizations(a2, 6).values()) == 106


def test_fit_z_polynomial_trivial_germ():
    germ = validate(parse_germ("garside-germ v1\nobject x\n"))
    z = fit_z_polynomial(germ, 2)
    assert z.degree == 0
    assert z(17) == 1


def test_fit_z_polynomial_rank2(rank2):
    z = fit_z_polynomial(rank2, 5)
    assert z.degree <= 3


def test_fit_z_polynomial_needs_samples(a2):
    with pytest.raises(GermError):
        fit_z_polynomial(a2, 4)


def test_z_polynomial_integer_valued():
    z = ZPolynomial((Fraction(1), Fraction(5), Fraction(6), Fraction(2)))
    assert z.degree == 3
    assert all(z(m).denominator == 1 for m in range(1, 10))


def test_cover_ball_radius_one(a2):
    ball = cover_ball(a2, 0, 1)
    labels = {tuple(v.factors): v for v in ball.vertices}
    assert len(ball.vertices) == 6
    # comparability graph of the hexagon minus loops: 11 edges
    assert len(ball.edges) == 11
    for i, j in ball.edges:
        assert (j, i) not in ball.edges


def test_cover_ball_radius_zero(a2):
    ball = cover_ball(a2, 0, 0)
    assert len(ball.vertices) == 1 and ball.edges == []


def test_cover_ball_vertices_positive(a2):
    ball = cover_ball(a2, 0, 2)
    for v in ball.vertices:
        assert v.inf >= 0 and v.sup <= 2


def test_exports(a2):
    lines = nerve_export_lines(a2, 2)
    assert lines[0] == "simplex 0 @ x :"
    assert "simplex 1 @ x : s" in lines
    assert all(line.startswith("simplex ") for line in lines)
    dot = cover_ball_dot(a2, cover_ball(a2, 0, 1))
    assert dot.startswith("graph cover_ball {")
    assert dot.count(" -- ") == 11
    atoms = atom_graph_dot(a2)
    assert atoms.startswith("digraph atom_graph {")
    assert atoms.count("->") == 2
