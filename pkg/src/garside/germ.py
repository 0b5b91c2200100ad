"""
germ: parse, validate and query Garside germs.

A germ is a finite oriented graph of "simples" with a partially defined,
associative, homogeneous product. Validation checks the Garside axioms
(maxima Δ_x, complement anti-isomorphism, cancellativity, lattice property)
and derives the data every other module consumes:

- ``delta[x]``: the maximal simple at each object,
- ``complement(s)``: the unique s̄ with s·s̄ = Δ at the source of s,
- ``phi``: the germ automorphism obtained as the double complement,
- meet/join tables for every pair of simples sharing a source.

Objects and simples are referenced by dense integer ids throughout; the
tables live in plain dicts and lists, which is plenty at finite type.
Validated germs are immutable in practice: nothing mutates them after
``validate`` returns, so all queries are safe under concurrent use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

NAME_RE = re.compile(r"^[A-Za-z0-9_'@(),-]+$")
RESERVED = {"garside-germ", "v1", "object", "simple", "product", "delta", "len", ":", "->", "="}


class GermError(Exception):
    """Base class for all germ-related failures."""


class GermSyntaxError(GermError):
    """Malformed germ file; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class GermValidationError(GermError):
    """A Garside axiom fails; the message contains a witness."""


class BudgetExceeded(GermError):
    """A configurable computation limit was hit before an answer was reached."""


@dataclass
class Budget:
    """Step counter shared by search loops; spend() raises once exhausted."""

    limit: int
    used: int = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"computation budget exceeded ({self.limit} steps)")


DEFAULT_BUDGET = 2_000_000


def as_budget(budget: Budget | int | None) -> Budget:
    if budget is None:
        return Budget(DEFAULT_BUDGET)
    if isinstance(budget, int):
        return Budget(budget)
    return budget


@dataclass(frozen=True)
class ObjectRef:
    id: int
    name: str


@dataclass(frozen=True)
class SimpleRef:
    id: int
    name: str
    source: int
    target: int
    length: int


@dataclass
class GermTable:
    """Raw germ data: objects, simples (identities included) and the partial product."""

    objects: list[ObjectRef]
    simples: list[SimpleRef]
    product: dict[tuple[int, int], int]
    identity: list[int]                  # object id -> its identity simple id
    declared_delta: dict[int, int]       # object id -> simple id, from explicit `delta` lines


def make_table(
    objects: list[str],
    simples: list[tuple[str, str, str, int]],
    products: list[tuple[str, str, str]],
    deltas: dict[str, str] | None = None,
) -> GermTable:
    """Assemble a GermTable from names; identities and identity products are added."""
    obj_refs: list[ObjectRef] = []
    obj_ix: dict[str, int] = {}
    simple_refs: list[SimpleRef] = []
    simple_ix: dict[str, int] = {}
    identity: list[int] = []

    def add_simple(name: str, src: int, tgt: int, length: int) -> int:
        if name in simple_ix:
            raise GermSyntaxError(f"duplicate simple name {name!r}")
        sid = len(simple_refs)
        simple_refs.append(SimpleRef(sid, name, src, tgt, length))
        simple_ix[name] = sid
        return sid

    for name in objects:
        if name in obj_ix:
            raise GermSyntaxError(f"duplicate object name {name!r}")
        oid = len(obj_refs)
        obj_refs.append(ObjectRef(oid, name))
        obj_ix[name] = oid
        identity.append(add_simple(f"id@{name}", oid, oid, 0))

    for name, src, tgt, length in simples:
        if src not in obj_ix or tgt not in obj_ix:
            raise GermSyntaxError(f"simple {name!r} references unknown object")
        if length <= 0:
            raise GermSyntaxError(f"simple {name!r} must have positive length")
        add_simple(name, obj_ix[src], obj_ix[tgt], length)

    product: dict[tuple[int, int], int] = {}
    # Identities are two-sided units, everywhere defined.
    for s in simple_refs:
        product[(identity[s.source], s.id)] = s.id
        product[(s.id, identity[s.target])] = s.id
    for a, b, c in products:
        for nm in (a, b, c):
            if nm not in simple_ix:
                raise GermSyntaxError(f"product references unknown simple {nm!r}")
        sa, sb, sc = (simple_refs[simple_ix[nm]] for nm in (a, b, c))
        if sa.target != sb.source:
            raise GermSyntaxError(
                f"product endpoints mismatched: target({a}) != source({b})"
            )
        if sc.source != sa.source or sc.target != sb.target:
            raise GermSyntaxError(f"product {a} {b} = {c} has wrong endpoints")
        if sa.length + sb.length != sc.length:
            raise GermSyntaxError(
                f"length non-additive: len({a})+len({b}) != len({c})"
            )
        key = (sa.id, sb.id)
        if key in product and product[key] != sc.id:
            raise GermSyntaxError(f"conflicting products declared for {a} {b}")
        product[key] = sc.id

    declared: dict[int, int] = {}
    for oname, sname in (deltas or {}).items():
        if oname not in obj_ix or sname not in simple_ix:
            raise GermSyntaxError(f"delta line references unknown name")
        oid = obj_ix[oname]
        sid = simple_ix[sname]
        if simple_refs[sid].source != oid:
            raise GermSyntaxError(f"delta {oname} = {sname}: source mismatch")
        declared[oid] = sid
    return GermTable(obj_refs, simple_refs, product, identity, declared)


def parse_germ(text: str) -> GermTable:
    """Parse germ-file contents (see the format notes in the README)."""
    objects: list[str] = []
    simples: list[tuple[str, str, str, int]] = []
    products: list[tuple[str, str, str]] = []
    deltas: dict[str, str] = {}
    seen_header = False

    def check_name(name: str, lineno: int) -> str:
        if not NAME_RE.match(name) or name in RESERVED:
            raise GermSyntaxError(f"illegal name {name!r}", lineno)
        return name

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not seen_header:
            if toks != ["garside-germ", "v1"]:
                raise GermSyntaxError("expected header 'garside-germ v1'", lineno)
            seen_header = True
            continue
        kind = toks[0]
        if kind == "object":
            if len(toks) != 2:
                raise GermSyntaxError("expected: object <name>", lineno)
            objects.append(check_name(toks[1], lineno))
        elif kind == "simple":
            if len(toks) == 6 and toks[2] == ":" and toks[4] == "->":
                length = 1
            elif len(toks) == 8 and toks[2] == ":" and toks[4] == "->" and toks[6] == "len":
                try:
                    length = int(toks[7])
                except ValueError:
                    raise GermSyntaxError("len expects an integer", lineno) from None
            else:
                raise GermSyntaxError(
                    "expected: simple <name> : <src> -> <tgt> [len <int>]", lineno
                )
            simples.append((check_name(toks[1], lineno), toks[3], toks[5], length))
        elif kind == "product":
            if len(toks) != 5 or toks[3] != "=":
                raise GermSyntaxError("expected: product <a> <b> = <c>", lineno)
            products.append((toks[1], toks[2], toks[4]))
        elif kind == "delta":
            if len(toks) != 4 or toks[2] != "=":
                raise GermSyntaxError("expected: delta <object> = <simple>", lineno)
            if toks[1] in deltas:
                raise GermSyntaxError(f"duplicate delta for object {toks[1]!r}", lineno)
            deltas[toks[1]] = toks[3]
        else:
            raise GermSyntaxError(f"unknown directive {kind!r}", lineno)
    if not seen_header:
        raise GermSyntaxError("empty file: missing 'garside-germ v1' header")
    try:
        return make_table(objects, simples, products, deltas)
    except GermSyntaxError as exc:
        raise GermSyntaxError(str(exc)) from None


def table_to_text(table: GermTable | "GarsideGerm") -> str:
    """Serialize back to the germ file format (identities and their products omitted)."""
    lines = ["garside-germ v1"]
    ids = set(table.identity)
    for obj in table.objects:
        lines.append(f"object {obj.name}")
    for s in table.simples:
        if s.id in ids:
            continue
        src = table.objects[s.source].name
        tgt = table.objects[s.target].name
        suffix = f" len {s.length}" if s.length != 1 else ""
        lines.append(f"simple {s.name} : {src} -> {tgt}{suffix}")
    for (a, b), c in sorted(table.product.items()):
        if a in ids or b in ids:
            continue
        lines.append(
            f"product {table.simples[a].name} {table.simples[b].name} = {table.simples[c].name}"
        )
    deltas = getattr(table, "delta", None)
    if deltas is not None:
        for oid, sid in enumerate(deltas):
            lines.append(f"delta {table.objects[oid].name} = {table.simples[sid].name}")
    else:
        for oid, sid in sorted(table.declared_delta.items()):
            lines.append(f"delta {table.objects[oid].name} = {table.simples[sid].name}")
    return "\n".join(lines) + "\n"


class GarsideGerm:
    """A validated Garside germ; construct via validate(), then treat as read-only."""

    def __init__(self, table: GermTable):
        self.objects = table.objects
        self.simples = table.simples
        self.product = dict(table.product)
        self.identity = list(table.identity)
        self.declared_delta = dict(table.declared_delta)
        self.by_source: list[list[int]] = [[] for _ in self.objects]
        self.by_target: list[list[int]] = [[] for _ in self.objects]
        for s in self.simples:
            self.by_source[s.source].append(s.id)
            self.by_target[s.target].append(s.id)
        self._object_ix = {obj.name: obj.id for obj in self.objects}
        self._simple_ix = {s.name: s.id for s in self.simples}
        # Filled in by validate():
        self.delta: list[int] = []
        self.left_divs: list[frozenset[int]] = []   # sid -> its left divisors
        self.right_divs: list[frozenset[int]] = []  # sid -> its right divisors
        self.lquot: dict[tuple[int, int], int] = {} # (a, b) -> c with a·c = b
        self.rquot: dict[tuple[int, int], int] = {} # (c, b) -> a with a·c = b
        self.complement_: list[int] = []
        self.phi_obj: list[int] = []
        self.phi_obj_inv: list[int] = []
        self.phi_simple: list[int] = []
        self.phi_simple_inv: list[int] = []
        self.phi_order: int = 0
        self.atoms: list[int] = []
        self.meet_table: dict[tuple[int, int], int] = {}
        self.join_table: dict[tuple[int, int], int] = {}

    # -- naming helpers -----------------------------------------------------

    def object_named(self, name: str) -> int:
        try:
            return self._object_ix[name]
        except KeyError:
            raise KeyError(f"no object named {name!r}") from None

    def simple_named(self, name: str) -> int:
        try:
            return self._simple_ix[name]
        except KeyError:
            raise KeyError(f"no simple named {name!r}") from None

    def simple_name(self, sid: int) -> str:
        return self.simples[sid].name

    def object_name(self, oid: int) -> str:
        return self.objects[oid].name

    # -- queries ------------------------------------------------------------

    def is_identity(self, sid: int) -> bool:
        return self.simples[sid].length == 0

    def is_delta(self, sid: int) -> bool:
        return self.delta[self.simples[sid].source] == sid

    def product_of(self, a: int, b: int) -> int | None:
        return self.product.get((a, b))

    def left_divides(self, a: int, b: int) -> bool:
        if self.simples[a].source != self.simples[b].source:
            raise GermError(
                f"left_divides: source mismatch between {self.simple_name(a)} and {self.simple_name(b)}"
            )
        return a in self.left_divs[b]

    def quotient(self, a: int, b: int) -> int:
        """The unique c with a·c = b; error if a does not left-divide b."""
        c = self.lquot.get((a, b))
        if c is None:
            raise GermError(
                f"{self.simple_name(a)} does not left-divide {self.simple_name(b)}"
            )
        return c

    def complement(self, sid: int) -> int:
        return self.complement_[sid]

    def meet(self, a: int, b: int) -> int:
        m = self.meet_table.get((a, b))
        if m is None:
            raise GermError("meet: source mismatch")
        return m

    def join(self, a: int, b: int) -> int:
        j = self.join_table.get((a, b))
        if j is None:
            raise GermError("join: source mismatch")
        return j

    def phi_power_obj(self, oid: int, n: int) -> int:
        n %= self.phi_order
        for _ in range(n):
            oid = self.phi_obj[oid]
        return oid

    def phi_power(self, sid: int, n: int) -> int:
        n %= self.phi_order
        for _ in range(n):
            sid = self.phi_simple[sid]
        return sid

    def divisor_list(self, sid: int) -> list[int]:
        return sorted(self.left_divs[sid])


def _check_table(table: GermTable) -> None:
    """GermTable invariants: endpoints, units, homogeneity, (assoc)."""
    simples = table.simples
    product = table.product
    names = set()
    for s in simples:
        if s.name in names:
            raise GermValidationError(f"duplicate simple name {s.name!r}")
        names.add(s.name)
        if (s.length == 0) != (s.id in table.identity):
            raise GermValidationError(f"length 0 iff identity violated at {s.name!r}")
    for (a, b), c in product.items():
        sa, sb, sc = simples[a], simples[b], simples[c]
        if sa.target != sb.source or sc.source != sa.source or sc.target != sb.target:
            raise GermValidationError(f"product {sa.name}·{sb.name} endpoints mismatched")
        if sa.length + sb.length != sc.length:
            raise GermValidationError(f"length non-additive at {sa.name}·{sb.name}")
    for s in simples:
        if product.get((table.identity[s.source], s.id)) != s.id:
            raise GermValidationError(f"left unit fails at {s.name!r}")
        if product.get((s.id, table.identity[s.target])) != s.id:
            raise GermValidationError(f"right unit fails at {s.name!r}")

    by_source: dict[int, list[int]] = {}
    by_target: dict[int, list[int]] = {}
    for s in simples:
        by_source.setdefault(s.source, []).append(s.id)
        by_target.setdefault(s.target, []).append(s.id)

    # (assoc): both bracketings agree, including definedness. Triples where
    # neither adjacent pair multiplies are vacuous, so it is enough to walk
    # defined products and attach a third factor on either side.
    for (a, b), ab in product.items():
        for c in by_source.get(simples[b].target, ()):
            e1 = product.get((ab, c))
            bc = product.get((b, c))
            e2 = product.get((a, bc)) if bc is not None else None
            if e1 != e2:
                raise GermValidationError(
                    "associativity fails at "
                    f"({simples[a].name}, {simples[b].name}, {simples[c].name})"
                )
    for (b, c), bc in product.items():
        for a in by_target.get(simples[b].source, ()):
            e2 = product.get((a, bc))
            ab = product.get((a, b))
            e1 = product.get((ab, c)) if ab is not None else None
            if e1 != e2:
                raise GermValidationError(
                    "associativity fails at "
                    f"({simples[a].name}, {simples[b].name}, {simples[c].name})"
                )


def validate(table: GermTable) -> GarsideGerm:
    """Check the Garside germ axioms and derive Δ, complements, φ and lattice tables."""
    _check_table(table)
    germ = GarsideGerm(table)
    simples = germ.simples
    product = germ.product

    # Cancellativity, with witness triples.
    seen: dict[tuple[int, int], int] = {}
    for (a, b), c in product.items():
        key = (a, c)
        if key in seen and seen[key] != b:
            raise GermValidationError(
                f"left cancellativity fails: {simples[a].name}·{simples[seen[key]].name} "
                f"= {simples[a].name}·{simples[b].name} = {simples[c].name}"
            )
        seen[key] = b
    seen.clear()
    for (a, b), c in product.items():
        key = (b, c)
        if key in seen and seen[key] != a:
            raise GermValidationError(
                f"right cancellativity fails: {simples[seen[key]].name}·{simples[b].name} "
                f"= {simples[a].name}·{simples[b].name} = {simples[c].name}"
            )
        seen[key] = a

    # Divisibility and quotient tables.
    ldivs: list[set[int]] = [{germ.identity[s.source], s.id} for s in simples]
    rdivs: list[set[int]] = [{germ.identity[s.target], s.id} for s in simples]
    for (a, b), c in product.items():
        ldivs[c].add(a)
        rdivs[c].add(b)
        germ.lquot[(a, c)] = b
        germ.rquot[(b, c)] = a
    germ.left_divs = [frozenset(d) for d in ldivs]
    germ.right_divs = [frozenset(d) for d in rdivs]

    # Δ_x: the maximum of (S_{x->}, ≤). Uniqueness follows from antisymmetry
    # (homogeneity makes ≤ a partial order).
    germ.delta = [-1] * len(germ.objects)
    for obj in germ.objects:
        out = germ.by_source[obj.id]
        top = [s for s in out if all(t in germ.left_divs[s] for t in out)]
        if len(top) != 1:
            raise GermValidationError(
                f"no maximum in simples out of object {obj.name!r}"
            )
        germ.delta[obj.id] = top[0]
        declared = germ.declared_delta.get(obj.id)
        if declared is not None and declared != top[0]:
            raise GermValidationError(
                f"declared delta {simples[declared].name!r} at {obj.name!r} is not the maximum"
            )
    germ.phi_obj = [simples[germ.delta[oid]].target for oid in range(len(germ.objects))]
    if sorted(germ.phi_obj) != list(range(len(germ.objects))):
        raise GermValidationError("targets of the delta simples do not permute objects")
    germ.phi_obj_inv = [0] * len(germ.objects)
    for x, y in enumerate(germ.phi_obj):
        germ.phi_obj_inv[y] = x

    # Complement s̄: s·s̄ = Δ_source(s); a bijection S_{x->} -> S_{->xφ}
    # reversing order (axiom (iii)).
    germ.complement_ = [-1] * len(simples)
    for s in simples:
        dx = germ.delta[s.source]
        bar = germ.lquot.get((s.id, dx))
        if bar is None:
            raise GermValidationError(
                f"no complement: {s.name!r} does not left-divide its delta"
            )
        germ.complement_[s.id] = bar
    for obj in germ.objects:
        out = germ.by_source[obj.id]
        into = germ.by_target[germ.phi_obj[obj.id]]
        image = {germ.complement_[s] for s in out}
        if len(image) != len(out) or image != set(into):
            raise GermValidationError(
                f"complement is not a bijection at object {obj.name!r}"
            )
        for a in out:
            for b in out:
                le = a in germ.left_divs[b]
                # antitone: a ≤ b iff complement(b) right-divides complement(a)
                ge = germ.complement_[b] in germ.right_divs[germ.complement_[a]]
                if le != ge:
                    raise GermValidationError(
                        f"complement not antitone at pair "
                        f"({simples[a].name}, {simples[b].name})"
                    )

    # φ = double complement; must be a germ automorphism.
    germ.phi_simple = [germ.complement_[germ.complement_[s.id]] for s in simples]
    if sorted(germ.phi_simple) != list(range(len(simples))):
        raise GermValidationError("double complement is not a permutation of simples")
    germ.phi_simple_inv = [0] * len(simples)
    for a, b in enumerate(germ.phi_simple):
        germ.phi_simple_inv[b] = a
    for s in simples:
        img = simples[germ.phi_simple[s.id]]
        if (
            img.source != germ.phi_obj[s.source]
            or img.target != germ.phi_obj[s.target]
            or img.length != s.length
        ):
            raise GermValidationError(f"phi does not preserve the graph at {s.name!r}")
    for (a, b), c in product.items():
        pc = product.get((germ.phi_simple[a], germ.phi_simple[b]))
        if pc != germ.phi_simple[c]:
            raise GermValidationError(
                f"phi does not preserve the product {simples[a].name}·{simples[b].name}"
            )
    for (a, b) in product:
        if (germ.phi_simple_inv[a], germ.phi_simple_inv[b]) not in product:
            raise GermValidationError("phi inverse does not preserve definedness")
    for oid in range(len(germ.objects)):
        if germ.phi_simple[germ.delta[oid]] != germ.delta[germ.phi_obj[oid]]:
            raise GermValidationError("phi does not map delta to delta")

    germ.phi_order = _permutation_order(germ.phi_simple)

    # Lattice: meets exist for every same-source pair; joins then exist too
    # (finite meet-semilattice with top), computed via the complement duality.
    length = [s.length for s in simples]
    for obj in germ.objects:
        out = germ.by_source[obj.id]
        for a in out:
            for b in out:
                common = germ.left_divs[a] & germ.left_divs[b]
                m = max(common, key=lambda c: (length[c], -c))
                if any(c not in germ.left_divs[m] for c in common):
                    raise GermValidationError(
                        f"pair ({simples[a].name}, {simples[b].name}) lacks a meet"
                    )
                germ.meet_table[(a, b)] = m
                # join(a, b) = complement^{-1} of the greatest common
                # right-divisor of the complements.
                ca, cb = germ.complement_[a], germ.complement_[b]
                rcommon = germ.right_divs[ca] & germ.right_divs[cb]
                g = max(rcommon, key=lambda c: (length[c], -c))
                if any(c not in germ.right_divs[g] for c in rcommon):
                    raise GermValidationError(
                        f"pair ({simples[a].name}, {simples[b].name}) lacks a join"
                    )
                j = germ.rquot.get((g, germ.delta[obj.id]))
                if j is None or a not in germ.left_divs[j] or b not in germ.left_divs[j]:
                    raise GermValidationError(
                        f"pair ({simples[a].name}, {simples[b].name}) lacks a join"
                    )
                germ.join_table[(a, b)] = j

    # Atoms generate: every simple is a product of atoms.
    nontrivial_products = {
        c for (a, b), c in product.items()
        if length[a] > 0 and length[b] > 0
    }
    germ.atoms = sorted(
        s.id for s in simples if length[s.id] > 0 and s.id not in nontrivial_products
    )
    reach = set(germ.identity)
    frontier = list(reach)
    while frontier:
        new = []
        for u in frontier:
            for a in germ.atoms:
                c = product.get((u, a))
                if c is not None and c not in reach:
                    reach.add(c)
                    new.append(c)
        frontier = new
    if len(reach) != len(simples):
        missing = next(s for s in simples if s.id not in reach)
        raise GermValidationError(f"simple {missing.name!r} is not a product of atoms")

    return germ


def _permutation_order(perm: list[int]) -> int:
    import math

    order = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        order = order * n // math.gcd(order, n)
    return order


@dataclass(frozen=True)
class Automorphism:
    """A germ automorphism, given by its action on object and simple ids."""

    obj_map: tuple[int, ...]
    simple_map: tuple[int, ...]

    def on_obj(self, oid: int) -> int:
        return self.obj_map[oid]

    def on_simple(self, sid: int) -> int:
        return self.simple_map[sid]

    def compose(self, other: "Automorphism") -> "Automorphism":
        return Automorphism(
            tuple(other.obj_map[x] for x in self.obj_map),
            tuple(other.simple_map[s] for s in self.simple_map),
        )


def phi_automorphism(germ: GarsideGerm, power: int = 1) -> Automorphism:
    psi = Automorphism(
        tuple(range(len(germ.objects))), tuple(range(len(germ.simples)))
    )
    step = Automorphism(tuple(germ.phi_obj), tuple(germ.phi_simple))
    for _ in range(power % germ.phi_order):
        psi = psi.compose(step)
    return psi


def check_automorphism(germ: GarsideGerm, psi: Automorphism) -> None:
    """Raise unless psi is an automorphism of the Garside structure."""
    if sorted(psi.obj_map) != list(range(len(germ.objects))):
        raise GermValidationError("psi does not permute objects")
    if sorted(psi.simple_map) != list(range(len(germ.simples))):
        raise GermValidationError("psi does not permute simples")
    for s in germ.simples:
        img = germ.simples[psi.on_simple(s.id)]
        if (
            img.source != psi.on_obj(s.source)
            or img.target != psi.on_obj(s.target)
            or img.length != s.length
        ):
            raise GermValidationError(f"psi does not preserve the graph at {s.name!r}")
    inv = [0] * len(psi.simple_map)
    for a, b in enumerate(psi.simple_map):
        inv[b] = a
    for (a, b), c in germ.product.items():
        if germ.product.get((psi.on_simple(a), psi.on_simple(b))) != psi.on_simple(c):
            raise GermValidationError("psi does not preserve the product")
        if (inv[a], inv[b]) not in germ.product:
            raise GermValidationError("psi inverse does not preserve definedness")
    for sid in range(len(germ.simples)):
        if psi.on_simple(germ.phi_simple[sid]) != germ.phi_simple[psi.on_simple(sid)]:
            raise GermValidationError("psi does not commute with phi")
    for oid in range(len(germ.objects)):
        if psi.on_simple(germ.delta[oid]) != germ.delta[psi.on_obj(oid)]:
            raise GermValidationError("psi does not map delta to delta")


def germ_isomorphism(g1: GarsideGerm, g2: GarsideGerm) -> dict[int, int] | None:
    """
    Search for a germ isomorphism (a simple-id map preserving everything).
    Backtracking; intended for desk-scale germs only. Returns None if the
    germs are not isomorphic.
    """
    if (
        len(g1.objects) != len(g2.objects)
        or len(g1.simples) != len(g2.simples)
        or len(g1.product) != len(g2.product)
    ):
        return None

    def profile(g: GarsideGerm, sid: int) -> tuple:
        s = g.simples[sid]
        return (s.length, len(g.left_divs[sid]), len(g.right_divs[sid]),
                g.is_delta(sid), g.simples[g.phi_simple[sid]].length)

    p1 = {s.id: profile(g1, s.id) for s in g1.simples}
    buckets: dict[tuple, list[int]] = {}
    for s in g2.simples:
        buckets.setdefault(profile(g2, s.id), []).append(s.id)
    order = sorted(range(len(g1.simples)), key=lambda sid: len(buckets.get(p1[sid], [])))

    smap: dict[int, int] = {}
    omap: dict[int, int] = {}
    used: set[int] = set()

    def objects_ok(sid: int, tid: int) -> bool:
        s, t = g1.simples[sid], g2.simples[tid]
        for o1, o2 in ((s.source, t.source), (s.target, t.target)):
            if omap.get(o1, o2) != o2:
                return False
        return True

    def assign(sid: int, tid: int, undo: list) -> bool:
        s, t = g1.simples[sid], g2.simples[tid]
        for o1, o2 in ((s.source, t.source), (s.target, t.target)):
            if o1 not in omap:
                omap[o1] = o2
                undo.append(o1)
        smap[sid] = tid
        used.add(tid)
        for a, ta in list(smap.items()):
            for x, y in ((sid, a), (a, sid)):
                c = g1.product.get((x, y))
                c2 = g2.product.get((smap[x], smap[y]))
                if (c is None) != (c2 is None):
                    return False
                if c is not None and c in smap and smap[c] != c2:
                    return False
        return True

    def backtrack(i: int) -> bool:
        if i == len(order):
            return all(smap[c] == g2.product.get((smap[a], smap[b]))
                       for (a, b), c in g1.product.items())
        sid = order[i]
        if sid in smap:
            return backtrack(i + 1)
        for tid in buckets.get(p1[sid], []):
            if tid in used or not objects_ok(sid, tid):
                continue
            undo: list[int] = []
            ok = assign(sid, tid, undo)
            if ok and backtrack(i + 1):
                return True
            del smap[sid]
            used.discard(tid)
            for o in undo:
                del omap[o]
        return False

    if backtrack(0):
        return dict(smap)
    return None


def components(germ: GarsideGerm) -> list[list[int]]:
    """Connected components of the underlying unoriented graph, as sorted object lists."""
    parent = list(range(len(germ.objects)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in germ.simples:
        a, b = find(s.source), find(s.target)
        if a != b:
            parent[a] = b
    groups: dict[int, list[int]] = {}
    for oid in range(len(germ.objects)):
        groups.setdefault(find(oid), []).append(oid)
    return sorted(sorted(g) for g in groups.values())
