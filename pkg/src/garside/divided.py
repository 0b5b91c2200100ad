"""
divided: the m-divided Garside category of a germ.

Objects of the m-divided category are m-subdivisions of Δ: composable tuples
(f_1, ..., f_m) of simples multiplying to Δ at the source of f_1. Simples are
"ladders": column tuples (s_1, ..., s_m) with s_i a left divisor of f_i such
that every diagonal product quotient(s_i, f_i)·s_{i+1} is again defined in the
germ (indices wrap with a φ twist: s_{m+1} = φ(s_1)). The Garside map at f is
the shift ladder with columns (f_1, ..., f_m), and the diagram automorphism is
the cyclic shift (f_1, ..., f_m) -> (f_2, ..., f_m, φ(f_1)).

The construction is assembled as a plain germ table and pushed through the
full validator; a validation failure here means a bug, not bad input.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .germ import GarsideGerm, GermError, make_table, validate
from .words import NormalForm, identity_nf, invert, multiply, normal_form

DividedObject = tuple[int, ...]


def subdivisions_of(germ: GarsideGerm, oid: int, m: int) -> list[DividedObject]:
    """All m-subdivisions of Δ at one object, in id-lexicographic order."""
    out: list[DividedObject] = []
    dx = germ.delta[oid]

    def extend(prefix: list[int], done: int, rest: int) -> None:
        # `done` is the product of the prefix; rest factors still to choose.
        if rest == 1:
            out.append(tuple(prefix + [germ.quotient(done, dx)]))
            return
        for u in germ.divisor_list(germ.quotient(done, dx)):
            step = germ.product_of(done, u)
            assert step is not None
            extend(prefix + [u], step, rest - 1)

    extend([], germ.identity[oid], m)
    return sorted(out)


def enumerate_subdivisions(
    germ: GarsideGerm, m: int, parallel: bool = False
) -> list[DividedObject]:
    """All m-subdivisions of every Δ_x; deterministic order regardless of schedule."""
    if m < 1:
        raise GermError("m must be a positive integer")
    oids = [o.id for o in germ.objects]
    if parallel and len(oids) > 1:
        with ThreadPoolExecutor() as pool:
            chunks = list(pool.map(lambda o: subdivisions_of(germ, o, m), oids))
    else:
        chunks = [subdivisions_of(germ, o, m) for o in oids]
    return sorted(x for chunk in chunks for x in chunk)


def count_subdivisions(germ: GarsideGerm, m: int) -> dict[int, int]:
    """
    |D_m| per object via multichain counting in (S_{x->}, ≤):
    an m-subdivision at x is an (m-1)-multichain 1 ≤ u_1 ≤ ... ≤ u_{m-1} ≤ Δ_x.
    """
    counts: dict[int, int] = {}
    for obj in germ.objects:
        # chains[u] = number of multichains of the current depth ending at u
        chains = {germ.identity[obj.id]: 1}
        for _ in range(m - 1):
            nxt: dict[int, int] = {}
            for u, n in chains.items():
                dx = germ.delta[obj.id]
                for q in germ.divisor_list(germ.quotient(u, dx)):
                    v = germ.product_of(u, q)
                    nxt[v] = nxt.get(v, 0) + n
            chains = nxt
        counts[obj.id] = sum(chains.values())
    return counts


def ladder_target(
    germ: GarsideGerm, src: DividedObject, cols: tuple[int, ...]
) -> DividedObject | None:
    """Target of the would-be ladder, or None if a diagonal product is undefined."""
    m = len(src)
    diag = []
    for i in range(m):
        if cols[i] not in germ.left_divs[src[i]]:
            return None
        diag.append(germ.quotient(cols[i], src[i]))
    tgt = []
    for i in range(m):
        nxt = cols[i + 1] if i + 1 < m else germ.phi_simple[cols[0]]
        g = germ.product_of(diag[i], nxt)
        if g is None:
            return None
        tgt.append(g)
    return tuple(tgt)


@dataclass(frozen=True)
class Ladder:
    src: DividedObject
    columns: tuple[int, ...]
    tgt: DividedObject

    def diagonals(self, germ: GarsideGerm) -> tuple[int, ...]:
        return tuple(germ.quotient(c, f) for c, f in zip(self.columns, self.src))


def ladders_from(germ: GarsideGerm, src: DividedObject) -> list[Ladder]:
    """All ladders with the given source, in column-lexicographic order."""
    out: list[Ladder] = []

    def extend(cols: list[int], i: int) -> None:
        if i == len(src):
            tgt = ladder_target(germ, src, tuple(cols))
            if tgt is not None:
                out.append(Ladder(src, tuple(cols), tgt))
            return
        for u in germ.divisor_list(src[i]):
            extend(cols + [u], i + 1)

    extend([], 0)
    return out


def ladders_between(
    germ: GarsideGerm, f: DividedObject, g: DividedObject
) -> list[Ladder]:
    return [lad for lad in ladders_from(germ, f) if lad.tgt == g]


@dataclass
class DividedGerm:
    """The validated m-divided germ plus the dictionaries tying it to the base."""

    germ: GarsideGerm
    base: GarsideGerm
    m: int
    objects: list[DividedObject]                  # divided object id -> factor tuple
    object_ix: dict[DividedObject, int]
    ladder_of: dict[int, Ladder]                  # simple id -> ladder
    simple_ix: dict[tuple[DividedObject, tuple[int, ...]], int]

    def object_of(self, f: DividedObject) -> int:
        return self.object_ix[f]

    def ladder_simple(self, src: DividedObject, cols: tuple[int, ...]) -> int:
        sid = self.simple_ix.get((src, cols))
        if sid is None:
            raise GermError("not a ladder of the divided germ")
        return sid

    def object_tuple_name(self, f: DividedObject) -> str:
        return "(" + ",".join(self.base.simple_name(s) for s in f) + ")"


def _object_name(base: GarsideGerm, f: DividedObject) -> str:
    return "(" + ",".join(base.simple_name(s) for s in f) + ")"


def build_divided_germ(
    germ: GarsideGerm, m: int, parallel: bool = False
) -> DividedGerm:
    """Construct and fully validate the m-divided germ."""
    objs = enumerate_subdivisions(germ, m, parallel=parallel)
    object_ix = {f: i for i, f in enumerate(objs)}
    obj_names = [_object_name(germ, f) for f in objs]

    if parallel and len(objs) > 1:
        with ThreadPoolExecutor() as pool:
            per_obj = list(pool.map(lambda f: ladders_from(germ, f), objs))
    else:
        per_obj = [ladders_from(germ, f) for f in objs]
    ladders = [lad for chunk in per_obj for lad in chunk]
    for lad in ladders:
        if lad.tgt not in object_ix:
            raise GermError("ladder target escapes the subdivision set")

    # Non-identity ladders need unique names; identical column tuples can
    # occur at distinct sources, so disambiguate with the source when needed.
    def col_name(lad: Ladder) -> str:
        return "lad(" + ",".join(germ.simple_name(c) for c in lad.columns) + ")"

    by_col: dict[str, int] = {}
    for lad in ladders:
        by_col[col_name(lad)] = by_col.get(col_name(lad), 0) + 1
    lengths = {lad: sum(germ.simples[c].length for c in lad.columns) for lad in ladders}
    names: dict[Ladder, str] = {}
    for lad in ladders:
        if lengths[lad] == 0:
            names[lad] = f"id@{_object_name(germ, lad.src)}"
            continue
        base_name = col_name(lad)
        if by_col[base_name] > 1:
            base_name += "@" + _object_name(germ, lad.src)
        names[lad] = base_name

    simples_decl = [
        (names[lad], _object_name(germ, lad.src), _object_name(germ, lad.tgt), lengths[lad])
        for lad in ladders
        if lengths[lad] > 0
    ]

    # Partial product: columnwise base products, defined when every column
    # multiplies and the result is again a ladder from the same source.
    lad_ix = {(lad.src, lad.columns): lad for lad in ladders}
    products = []
    by_src: dict[DividedObject, list[Ladder]] = {}
    for lad in ladders:
        by_src.setdefault(lad.src, []).append(lad)
    for s in ladders:
        if lengths[s] == 0:
            continue
        for t in by_src.get(s.tgt, ()):
            if lengths[t] == 0:
                continue
            cols = []
            for a, b in zip(s.columns, t.columns):
                c = germ.product_of(a, b)
                if c is None:
                    break
                cols.append(c)
            else:
                st = lad_ix.get((s.src, tuple(cols)))
                if st is not None:
                    products.append((names[s], names[t], names[st]))

    deltas = {}
    for f in objs:
        shift = lad_ix.get((f, f))
        if shift is None:
            raise GermError("shift ladder missing; base germ is not Garside")
        deltas[_object_name(germ, f)] = names[shift]

    table = make_table(obj_names, simples_decl, products, deltas)
    dgerm = validate(table)

    ladder_of: dict[int, Ladder] = {}
    simple_ix: dict[tuple[DividedObject, tuple[int, ...]], int] = {}
    for lad in ladders:
        sid = dgerm.simple_named(names[lad])
        ladder_of[sid] = lad
        simple_ix[(lad.src, lad.columns)] = sid
    dg = DividedGerm(dgerm, germ, m, objs, object_ix, ladder_of, simple_ix)

    # Cross-check the derived automorphism against the defining cyclic shift.
    for i, f in enumerate(objs):
        shifted = tuple(f[1:]) + (germ.phi_simple[f[0]],)
        if dgerm.phi_obj[i] != object_ix[shifted]:
            raise GermError("divided phi is not the cyclic shift on objects")
    if dgerm.phi_order % germ.phi_order != 0 or (m * germ.phi_order) % dgerm.phi_order != 0:
        raise GermError("divided phi order does not divide m × base phi order")
    return dg


# -- the functor Θ_m -------------------------------------------------------

def theta_object(germ: GarsideGerm, oid: int, m: int) -> DividedObject:
    """(1_x, ..., 1_x, Δ_x)."""
    return tuple([germ.identity[oid]] * (m - 1) + [germ.delta[oid]])


def theta_simple(dg: DividedGerm, sid: int) -> NormalForm:
    """
    Θ_m of a base simple: slide the column holding s from the Δ slot leftward
    one place per step; every intermediate row must be a valid ladder.
    """
    base, m = dg.base, dg.m
    s = base.simples[sid]
    cur = theta_object(base, s.source, m)
    res = identity_nf(dg.object_of(cur))
    for step in range(m):
        pos = m - 1 - step
        cols = tuple(
            sid if i == pos else base.identity[base.simples[cur[i]].source]
            for i in range(m)
        )
        tgt = ladder_target(base, cur, cols)
        if tgt is None:
            raise GermError("theta slide produced an invalid ladder (internal error)")
        lsid = dg.ladder_simple(cur, cols)
        res = multiply(
            dg.germ, res, normal_form(dg.germ, [lsid])
        )
        cur = tgt
    if cur != theta_object(base, s.target, m):
        raise GermError("theta did not land on the expected object (internal error)")
    return res


def theta_morphism(dg: DividedGerm, f: NormalForm) -> NormalForm:
    """Multiplicative extension of Θ_m over factors and Δ-powers."""
    base = dg.base
    res = identity_nf(dg.object_of(theta_object(base, f.source, dg.m)))
    for sid in f.factors:
        res = multiply(dg.germ, res, theta_simple(dg, sid))
    at = f.source
    for sid in f.factors:
        at = base.simples[sid].target
    k = f.delta_exp
    if k >= 0:
        for _ in range(k):
            res = multiply(dg.germ, res, theta_simple(dg, base.delta[at]))
            at = base.phi_obj[at]
    else:
        for _ in range(-k):
            at = base.phi_obj_inv[at]
            res = multiply(dg.germ, res, invert(dg.germ, theta_simple(dg, base.delta[at])))
    return res


# -- the subdivision isomorphism D_eq(C) ≅ D_e(C_q) ------------------------

@dataclass
class SubdivisionIso:
    e: int
    q: int
    eq_divided: DividedGerm          # C_{eq}
    q_divided: DividedGerm           # C_q
    iterated: DividedGerm            # (C_q)_e
    object_map: dict[int, int]       # C_{eq} object id -> (C_q)_e object id
    simple_map: dict[int, int]       # C_{eq} simple id -> (C_q)_e simple id
    fixed_check: str = "skipped"     # the p=1 fixed-subgerm comparison outcome


def _regroup_object(dg_q: DividedGerm, f: DividedObject, e: int, q: int) -> DividedObject:
    """Group an eq-subdivision into an e-tuple of C_q ladder ids."""
    base = dg_q.base
    blocks = []
    for i in range(q):
        seg = f[i * e : (i + 1) * e]
        prod = seg[0]
        for s in seg[1:]:
            prod = base.product_of(prod, s)
            assert prod is not None
        blocks.append(prod)
    src = tuple(blocks)
    out = []
    cur = src
    for r in range(e):
        cols = tuple(f[i * e + r] for i in range(q))
        sid = dg_q.ladder_simple(cur, cols)
        out.append(sid)
        cur = dg_q.ladder_of[sid].tgt
    return tuple(out)


def subdivision_iso(germ: GarsideGerm, e: int, q: int) -> SubdivisionIso:
    """
    The grouping bijection D_{eq}(C) <-> D_e(C_q), verified to be a germ
    isomorphism C_{eq} ≅ (C_q)_e carrying Δ to Δ and intertwining the shifts.
    """
    if e < 1 or q < 1:
        raise GermError("e and q must be positive")
    dg_eq = build_divided_germ(germ, e * q)
    dg_q = build_divided_germ(germ, q)
    dg_it = build_divided_germ(dg_q.germ, e)

    if len(dg_eq.objects) != len(dg_it.objects):
        raise GermError("subdivision counts disagree (internal error)")
    object_map: dict[int, int] = {}
    for i, f in enumerate(dg_eq.objects):
        g = _regroup_object(dg_q, f, e, q)
        object_map[i] = dg_it.object_of(g)
    if len(set(object_map.values())) != len(object_map):
        raise GermError("object regrouping is not injective (internal error)")

    simple_map: dict[int, int] = {}
    for sid, lad in dg_eq.ladder_of.items():
        src_it = dg_it.objects[object_map[dg_eq.object_of(lad.src)]]
        # Column r of the image is the C_q ladder whose columns interleave
        # the eq columns with stride e.
        cols_it = []
        for r in range(e):
            q_src = dg_q.ladder_of[src_it[r]].src
            q_cols = tuple(lad.columns[i * e + r] for i in range(q))
            cols_it.append(dg_q.ladder_simple(q_src, q_cols))
        image = dg_it.ladder_simple(src_it, tuple(cols_it))
        simple_map[sid] = image
    if len(set(simple_map.values())) != len(simple_map) or len(simple_map) != len(
        dg_it.ladder_of
    ):
        raise GermError("simple regrouping is not bijective (internal error)")

    # Germ isomorphism: products, Δ, and the shift automorphisms line up.
    g1, g2 = dg_eq.germ, dg_it.germ
    for (a, b), c in g1.product.items():
        if g2.product.get((simple_map[a], simple_map[b])) != simple_map[c]:
            raise GermError("regrouping does not preserve the product")
    if len(g1.product) != len(g2.product):
        raise GermError("regrouping misses products")
    for i in range(len(dg_eq.objects)):
        if simple_map[g1.delta[i]] != g2.delta[object_map[i]]:
            raise GermError("regrouping does not carry delta to delta")
        if object_map[g1.phi_obj[i]] != g2.phi_obj[object_map[i]]:
            raise GermError("regrouping does not intertwine the shifts")

    # Opportunistic p=1 check of the fixed-subgerm refinement:
    # C_{eq}^{φ_{eq}^e} ≅ (C_q^{φ_q})_e, when both sides are non-empty.
    from .conjugacy import fixed_subgerm
    from .germ import germ_isomorphism, phi_automorphism

    left = fixed_subgerm(g1, phi_automorphism(g1, e))
    right_base = fixed_subgerm(dg_q.germ, phi_automorphism(dg_q.germ, 1))
    if left.is_empty or right_base.is_empty:
        fixed_check = "skipped (empty fixed subgerm)"
    else:
        right = build_divided_germ(right_base.subgerm, e)
        if germ_isomorphism(left.subgerm, right.germ) is None:
            raise GermError("fixed-subgerm refinement fails (internal error)")
        fixed_check = "verified"
    return SubdivisionIso(
        e, q, dg_eq, dg_q, dg_it, object_map, simple_map, fixed_check
    )
