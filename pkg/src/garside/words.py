"""
words: the free category on a germ and its groupoid of fractions.

Every groupoid element is kept in left-greedy normal form

    f = s_1 s_2 ... s_l Δ^k

with the Δ-power at the right end. The factors s_i are simple ids that are
neither identities nor Δ's, each pair satisfies the greedy condition
meet(complement(s_i), s_{i+1}) = identity, and equality of normal forms is
plain structural equality, which solves the word problem.

Internal Δ's migrate right through the twist Δ·g = g^{φ^{-1}}·Δ; the greedy
rebalancing sweeps transfer meet(complement(a), b) from b to a until stable.
Homogeneity bounds the number of transfers, so the sweep terminates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .germ import BudgetExceeded, GarsideGerm, GermError

MAX_WORD_FACTORS = 1 << 16


@dataclass(frozen=True)
class PositiveWord:
    """A composable sequence of simples; empty words need an explicit source."""

    source: int
    factors: tuple[int, ...]

    def check(self, germ: GarsideGerm) -> "PositiveWord":
        at = self.source
        for sid in self.factors:
            if germ.simples[sid].source != at:
                raise GermError(
                    f"word is not composable at factor {germ.simple_name(sid)!r}"
                )
            at = germ.simples[sid].target
        return self


@dataclass(frozen=True)
class NormalForm:
    source: int
    factors: tuple[int, ...]
    delta_exp: int

    @property
    def inf(self) -> int:
        return self.delta_exp

    @property
    def sup(self) -> int:
        return self.delta_exp + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)


def target(germ: GarsideGerm, f: NormalForm) -> int:
    at = f.source
    for sid in f.factors:
        at = germ.simples[sid].target
    return germ.phi_power_obj(at, f.delta_exp)


def is_loop(germ: GarsideGerm, f: NormalForm) -> bool:
    return target(germ, f) == f.source


def identity_nf(oid: int) -> NormalForm:
    return NormalForm(oid, (), 0)


def delta_power_nf(oid: int, k: int) -> NormalForm:
    return NormalForm(oid, (), k)


def _normalize(germ: GarsideGerm, source: int, factors: list[int], k: int) -> NormalForm:
    if len(factors) > MAX_WORD_FACTORS:
        raise BudgetExceeded(
            f"word exceeds the {MAX_WORD_FACTORS}-factor computation limit"
        )
    changed = True
    while changed:
        changed = False
        # Drop identity factors (case (II) rewriting).
        kept = [s for s in factors if not germ.is_identity(s)]
        if len(kept) != len(factors):
            factors = kept
            changed = True
        # Migrate Δ factors to the right end: Δ·g = g^{φ^{-1}}·Δ.
        i = 0
        while i < len(factors):
            if germ.is_delta(factors[i]):
                for j in range(i + 1, len(factors)):
                    factors[j] = germ.phi_simple_inv[factors[j]]
                del factors[i]
                k += 1
                changed = True
            else:
                i += 1
        # One left-to-right greedy sweep.
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            u = germ.meet(germ.complement(a), b)
            if not germ.is_identity(u):
                prod = germ.product_of(a, u)
                assert prod is not None  # u ≤ complement(a) makes a·u simple
                factors[i] = prod
                factors[i + 1] = germ.quotient(u, b)
                changed = True
    return NormalForm(source, tuple(factors), k)


def normal_form(
    germ: GarsideGerm, word: PositiveWord | list[int] | tuple[int, ...], delta_shift: int = 0
) -> NormalForm:
    """Normal form of word·Δ^{delta_shift}; the word may contain identities and Δ's."""
    if isinstance(word, PositiveWord):
        word.check(germ)
        source, factors = word.source, list(word.factors)
    else:
        factors = list(word)
        if not factors:
            raise GermError("empty word needs an explicit source; use identity_nf")
        source = germ.simples[factors[0]].source
        PositiveWord(source, tuple(factors)).check(germ)
    return _normalize(germ, source, factors, delta_shift)


def is_greedy(germ: GarsideGerm, f: NormalForm) -> bool:
    """Factor-wise greedy invariant; used by tests and internal assertions."""
    for sid in f.factors:
        if germ.is_identity(sid) or germ.is_delta(sid):
            return False
    for a, b in zip(f.factors, f.factors[1:]):
        if not germ.is_identity(germ.meet(germ.complement(a), b)):
            return False
    return True


def multiply(germ: GarsideGerm, f: NormalForm, g: NormalForm) -> NormalForm:
    """Normal form of the composite f·g."""
    if target(germ, f) != g.source:
        raise GermError("multiply: endpoint mismatch")
    twisted = [germ.phi_power(s, -f.delta_exp) for s in g.factors]
    return _normalize(
        germ, f.source, list(f.factors) + twisted, f.delta_exp + g.delta_exp
    )


def invert(germ: GarsideGerm, f: NormalForm) -> NormalForm:
    """The groupoid inverse, via s^{-1} = complement(s)·Δ^{-1}."""
    res = delta_power_nf(target(germ, f), -f.delta_exp)
    for sid in reversed(f.factors):
        bar = germ.complement(sid)
        piece = _normalize(germ, germ.simples[bar].source, [bar], -1)
        res = multiply(germ, res, piece)
    return res


def equal(f: NormalForm, g: NormalForm) -> bool:
    return f == g


def phi_on_morphism(germ: GarsideGerm, f: NormalForm, n: int) -> NormalForm:
    return NormalForm(
        germ.phi_power_obj(f.source, n),
        tuple(germ.phi_power(s, n) for s in f.factors),
        f.delta_exp,
    )


def power(germ: GarsideGerm, f: NormalForm, n: int) -> NormalForm:
    if n == 0:
        return identity_nf(f.source)
    if n == 1:
        return f
    if not is_loop(germ, f):
        raise GermError("only loops can be raised to powers outside {0, 1}")
    if n < 0:
        return power(germ, invert(germ, f), -n)
    res = f
    for _ in range(n - 1):
        res = multiply(germ, res, f)
    return res


# -- word syntax ---------------------------------------------------------

def parse_word(germ: GarsideGerm, text: str) -> NormalForm:
    """
    Parse the morphism word syntax: whitespace-separated simple names, with
    optional `D^<int>` tokens (a Δ-power at the current object) and an
    optional leading `@<object>` pinning the source.
    """
    toks = text.split()
    source: int | None = None
    if toks and toks[0].startswith("@"):
        source = germ.object_named(toks[0][1:])
        toks = toks[1:]
    if source is None:
        for tok in toks:
            if not _delta_token(tok):
                source = germ.simples[germ.simple_named(tok)].source
                break
    if source is None:
        raise GermError("ambiguous word: prefix it with @<object>")
    res = identity_nf(source)
    for tok in toks:
        d = _delta_token(tok)
        if d is not None:
            res = multiply(germ, res, delta_power_nf(target(germ, res), d))
        else:
            sid = germ.simple_named(tok)
            piece = _normalize(germ, germ.simples[sid].source, [sid], 0)
            res = multiply(germ, res, piece)
    return res


def _delta_token(tok: str) -> int | None:
    if tok.startswith("D^"):
        try:
            return int(tok[2:])
        except ValueError:
            return None
    return None


def format_word(germ: GarsideGerm, f: NormalForm) -> str:
    """Inverse of parse_word on normal forms."""
    parts = [germ.simple_name(s) for s in f.factors]
    if f.delta_exp != 0:
        parts.append(f"D^{f.delta_exp}")
    if not parts:
        return f"@{germ.object_name(f.source)}"
    if not f.factors:
        return f"@{germ.object_name(f.source)} " + " ".join(parts)
    return " ".join(parts)


# -- bounded enumeration helpers ------------------------------------------

def positive_elements_up_to(
    germ: GarsideGerm, source: int, length_bound: int
) -> list[NormalForm]:
    """
    All distinct positive morphisms out of `source` of homogeneous length
    <= length_bound, by breadth-first multiplication with atoms.
    """
    start = identity_nf(source)
    seen = {start: 0}
    frontier = [(start, 0)]
    while frontier:
        new = []
        for f, ln in frontier:
            at = target(germ, f)
            for a in germ.atoms:
                if germ.simples[a].source != at:
                    continue
                ln2 = ln + germ.simples[a].length
                if ln2 > length_bound:
                    continue
                g = multiply(germ, f, NormalForm(at, (a,), 0))
                if g not in seen:
                    seen[g] = ln2
                    new.append((g, ln2))
        frontier = new
    return sorted(seen, key=lambda f: (seen[f], f.delta_exp, f.factors))


def left_divides_morphism(germ: GarsideGerm, f: NormalForm, g: NormalForm) -> bool:
    """Prefix order on the groupoid: f ≤ g iff f^{-1}·g is positive."""
    q = multiply(germ, invert(germ, f), g)
    return q.inf >= 0
