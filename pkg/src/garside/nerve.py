"""
nerve: combinatorics of the Garside nerve.

Simplices are composable tuples (f_1, ..., f_n) of simples whose product
left-divides Δ at the basepoint; since every simple at an object divides Δ
there, a tuple is a simplex exactly when all its partial products are defined
in the germ. Nondegenerate simplices have no identity factor and biject with
strict chains 1 < u_1 < ... < u_n ≤ Δ.

Also here: the special degeneracy (complete the product to Δ) and first face
operators with their cyclic-shift identities, factorization counting with the
Newton polynomial fit, and the bounded universal-cover ball export.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .divided import count_subdivisions
from .germ import GarsideGerm, GermError
from .words import NormalForm, identity_nf, invert, multiply, target


@dataclass(frozen=True)
class NerveSimplex:
    basepoint: int
    factors: tuple[int, ...]


def _fold_product(germ: GarsideGerm, basepoint: int, factors: tuple[int, ...]) -> int:
    prod = germ.identity[basepoint]
    for sid in factors:
        nxt = germ.product_of(prod, sid)
        if nxt is None:
            raise GermError("tuple is not a nerve simplex (product escapes the simples)")
        prod = nxt
    return prod


def garside_dimension(germ: GarsideGerm) -> int:
    """Longest strict divisibility chain among simples sharing a source."""
    best = 0
    for obj in germ.objects:
        depth: dict[int, int] = {}

        def longest(sid: int) -> int:
            if sid in depth:
                return depth[sid]
            d = 0
            for c in germ.by_source[obj.id]:
                if c != sid and sid in germ.left_divs[c]:
                    d = max(d, 1 + longest(c))
            depth[sid] = d
            return d

        best = max(best, longest(germ.identity[obj.id]))
    return best


def enumerate_simplices(germ: GarsideGerm, n: int) -> list[NerveSimplex]:
    """All n-simplices of the Garside nerve (identity factors allowed)."""
    out: list[NerveSimplex] = []
    for obj in germ.objects:
        def extend(prefix: list[int], prod: int) -> None:
            if len(prefix) == n:
                out.append(NerveSimplex(obj.id, tuple(prefix)))
                return
            for sid in germ.by_source[germ.simples[prod].target]:
                nxt = germ.product_of(prod, sid)
                if nxt is not None:
                    extend(prefix + [sid], nxt)

        extend([], germ.identity[obj.id])
    return sorted(out, key=lambda sx: (sx.basepoint, sx.factors))


def enumerate_nondegenerate(germ: GarsideGerm, n: int) -> list[NerveSimplex]:
    """Simplices with no identity factor: strict chains 1 < u_1 < ... < u_n ≤ Δ."""
    return [
        sx
        for sx in enumerate_simplices(germ, n)
        if all(not germ.is_identity(s) for s in sx.factors)
    ]


def special_degeneracy(germ: GarsideGerm, sx: NerveSimplex) -> NerveSimplex:
    """Append the unique factor completing the product to Δ at the basepoint."""
    prod = _fold_product(germ, sx.basepoint, sx.factors)
    last = germ.quotient(prod, germ.delta[sx.basepoint])
    return NerveSimplex(sx.basepoint, sx.factors + (last,))


def face_zero(germ: GarsideGerm, sx: NerveSimplex) -> NerveSimplex:
    """d_0: drop the first factor and rebase."""
    if not sx.factors:
        raise GermError("d_0 is undefined on 0-simplices")
    return NerveSimplex(germ.simples[sx.factors[0]].target, sx.factors[1:])


@dataclass
class CyclicReport:
    checked: int
    shift_counterexamples: list[NerveSimplex]
    power_counterexamples: list[NerveSimplex]

    @property
    def ok(self) -> bool:
        return not self.shift_counterexamples and not self.power_counterexamples


def check_cyclic_identities(germ: GarsideGerm, up_to_dim: int) -> CyclicReport:
    """
    (a) degeneracy-after-face is the φ-twisted cyclic shift on Δ-subdivisions;
    (b) (n+1)-fold face-after-degeneracy applies φ factor-wise on n-simplices.
    """
    checked = 0
    bad_shift: list[NerveSimplex] = []
    bad_power: list[NerveSimplex] = []
    for n in range(up_to_dim + 1):
        for sx in enumerate_simplices(germ, n):
            checked += 1
            if n >= 1:
                prod = _fold_product(germ, sx.basepoint, sx.factors)
                if germ.is_delta(prod):
                    got = special_degeneracy(germ, face_zero(germ, sx))
                    want = NerveSimplex(
                        germ.simples[sx.factors[0]].target,
                        sx.factors[1:] + (germ.phi_simple[sx.factors[0]],),
                    )
                    if got != want:
                        bad_shift.append(sx)
            cur = sx
            for _ in range(n + 1):
                cur = face_zero(germ, special_degeneracy(germ, cur))
            want = NerveSimplex(
                germ.phi_obj[sx.basepoint],
                tuple(germ.phi_simple[s] for s in sx.factors),
            )
            if cur != want:
                bad_power.append(sx)
    return CyclicReport(checked, bad_shift, bad_power)


def count_factorizations(germ: GarsideGerm, r: int) -> dict[int, int]:
    """|D_r| per object (multichain counting, shared with the divided module)."""
    if r < 1:
        raise GermError("r must be positive")
    return count_subdivisions(germ, r)


@dataclass(frozen=True)
class ZPolynomial:
    """Counting polynomial in the Newton basis: Z(m) = Σ c_j · C(m-1, j)."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        deg = -1
        for j, c in enumerate(self.coefficients):
            if c != 0:
                deg = j
        return deg

    def __call__(self, m: int) -> Fraction:
        return sum(
            (c * comb(m - 1, j) for j, c in enumerate(self.coefficients)),
            start=Fraction(0),
        )


def fit_z_polynomial(germ: GarsideGerm, samples: int) -> ZPolynomial:
    """
    Newton forward-difference interpolation of m -> |D_m| through m = 1..samples.
    Verifies degree ≤ Garside dimension and two out-of-sample predictions.
    """
    dim = garside_dimension(germ)
    if samples < dim + 2:
        raise GermError(f"need at least dim+2 = {dim + 2} samples")
    values = [sum(count_factorizations(germ, m).values()) for m in range(1, samples + 1)]
    row = [Fraction(v) for v in values]
    coeffs = []
    while row:
        coeffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    z = ZPolynomial(tuple(coeffs))
    if z.degree > dim:
        raise GermError(
            f"fitted degree {z.degree} exceeds the Garside dimension {dim}"
        )
    for m in (samples + 1, samples + 2):
        direct = sum(count_factorizations(germ, m).values())
        if z(m) != direct:
            raise GermError(f"polynomial prediction fails at m = {m}")
    return z


# -- bounded universal-cover ball -------------------------------------------

@dataclass
class CoverBall:
    basepoint: int
    radius: int
    vertices: list[NormalForm]
    edges: list[tuple[int, int]]    # indices into vertices, i < j


def _is_positive_simple(germ: GarsideGerm, f: NormalForm) -> bool:
    # a simple morphism of the groupoid: a non-identity factor, or Δ itself
    return f.inf >= 0 and f.sup <= 1 and f != identity_nf(f.source)


def cover_ball(germ: GarsideGerm, basepoint: int, radius: int) -> CoverBall:
    """
    Positive morphisms from the basepoint with sup ≤ radius; edges join f, g
    when f^{-1}g or g^{-1}f is simple.
    """
    if radius < 0:
        raise GermError("radius must be non-negative")
    seen = {identity_nf(basepoint)}
    frontier = list(seen)
    while frontier:
        new = []
        for f in frontier:
            at = target(germ, f)
            for sid in germ.by_source[at]:
                if germ.is_identity(sid):
                    continue
                g = multiply(germ, f, NormalForm(at, (sid,), 0))
                if g.sup <= radius and g not in seen:
                    seen.add(g)
                    new.append(g)
        frontier = new
    vertices = sorted(seen, key=lambda f: (f.sup, f.delta_exp, f.factors))
    edges = []
    for i in range(len(vertices)):
        for j in range(i + 1, len(vertices)):
            d = multiply(germ, invert(germ, vertices[i]), vertices[j])
            if _is_positive_simple(germ, d) or _is_positive_simple(
                germ, invert(germ, d)
            ):
                edges.append((i, j))
    return CoverBall(basepoint, radius, vertices, edges)


# -- exports -----------------------------------------------------------------

def nerve_export_lines(germ: GarsideGerm, up_to_dim: int, nondegenerate: bool = True) -> list[str]:
    lines = []
    for n in range(up_to_dim + 1):
        simplices = (
            enumerate_nondegenerate(germ, n) if nondegenerate else enumerate_simplices(germ, n)
        )
        for sx in simplices:
            names = " ".join(germ.simple_name(s) for s in sx.factors)
            lines.append(
                f"simplex {n} @ {germ.object_name(sx.basepoint)} : {names}".rstrip()
            )
    return lines


def cover_ball_dot(germ: GarsideGerm, ball: CoverBall) -> str:
    from .words import format_word

    lines = [
        "graph cover_ball {",
        f'  // ball of radius {ball.radius} at {germ.object_name(ball.basepoint)}'
        " in the universal cover (finite approximation)",
    ]
    for i, f in enumerate(ball.vertices):
        lines.append(f'  v{i} [label="{format_word(germ, f)}"];')
    for i, j in ball.edges:
        lines.append(f"  v{i} -- v{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def atom_graph_dot(germ: GarsideGerm) -> str:
    lines = ["digraph atom_graph {"]
    for obj in germ.objects:
        lines.append(f'  o{obj.id} [label="{obj.name}"];')
    for a in germ.atoms:
        s = germ.simples[a]
        lines.append(f'  o{s.source} -> o{s.target} [label="{s.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
