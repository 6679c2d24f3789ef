"""Finite groups as explicit multiplication tables on indices 0..order-1.

Constructors cover cyclic groups, semidirect products C_m x| C_n with a
chosen twist exponent, the classical two-generator families (dihedral,
dicyclic, generalized quaternion, semidihedral) and direct products.
Subgroups, homomorphisms and quotients are verified by enumeration at
construction time rather than trusted from formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import BadParameter, BadShape, InvalidTwist, NotNormal, ParseError
from .numbers import largest_prime_factor

MAX_ORDER = 4096

__all__ = [
    "FiniteGroup",
    "GroupStructure",
    "Subgroup",
    "Homomorphism",
    "make_cyclic",
    "make_semidirect",
    "make_dihedral",
    "make_dicyclic",
    "make_quaternion",
    "make_semidihedral",
    "make_product",
    "make_named",
    "quotient",
    "cpcp_normal_subgroup",
    "family_params",
    "parse_group_spec",
    "MAX_ORDER",
]


@dataclass(frozen=True)
class GroupStructure:
    """Structural metadata attached by the constructors.

    kind is one of cyclic, semidirect, product, dihedral, dicyclic,
    quaternion, semidihedral. For semidirect groups the parameters are
    (m, n, s): order mn with normal cyclic factor of order n and
    conjugation exponent s. For the two-generator families n holds the
    constructor parameter k.
    """

    kind: str
    m: int | None = None
    n: int | None = None
    s: int | None = None


class FiniteGroup:
    """Immutable finite group on element indices [0, order)."""

    def __init__(
        self,
        label: str,
        mult: list[list[int]],
        identity: int = 0,
        inv: list[int] | None = None,
        structure: GroupStructure | None = None,
    ):
        order = len(mult)
        if order < 1:
            raise BadParameter("group order must be positive")
        if order > MAX_ORDER:
            raise BadParameter(f"order {order} exceeds the cap {MAX_ORDER}")
        for i, row in enumerate(mult):
            if len(row) != order:
                raise BadParameter(f"multiplication row {i} has wrong length")
        self.label = label
        self.order = order
        self.identity = identity
        self.mult = tuple(tuple(row) for row in mult)
        self.structure = structure
        if inv is None:
            inv = [-1] * order
            for g in range(order):
                row = self.mult[g]
                for h in range(order):
                    if row[h] == identity:
                        inv[g] = h
                        break
                if inv[g] < 0:
                    raise BadParameter(f"element {g} has no inverse")
        self.inv = tuple(inv)
        self._check_unit_and_inverses()
        self._orders: tuple[int, ...] | None = None
        self._abelian: bool | None = None
        self._rmul_chunks = None  # built lazily by the sequence DP

    def _check_unit_and_inverses(self) -> None:
        e = self.identity
        for g in range(self.order):
            if self.mult[e][g] != g or self.mult[g][e] != g:
                raise BadParameter(f"identity fails on element {g}")
            h = self.inv[g]
            if self.mult[g][h] != e or self.mult[h][g] != e:
                raise BadParameter(f"inverse table wrong for element {g}")

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def elements(self) -> range:
        return range(self.order)

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        acc = self.identity
        base = g
        while k:
            if k & 1:
                acc = self.mult[acc][base]
            base = self.mult[base][base]
            k >>= 1
        return acc

    def product(self, items) -> int:
        acc = self.identity
        for g in items:
            acc = self.mult[acc][g]
        return acc

    def element_order(self, g: int) -> int:
        if self._orders is not None:
            return self._orders[g]
        n = 1
        x = g
        while x != self.identity:
            x = self.mult[x][g]
            n += 1
        return n

    def element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            self._orders = tuple(self.element_order(g) for g in range(self.order))
        return self._orders

    def exponent(self) -> int:
        """Maximum element order."""
        return max(self.element_orders())

    def is_abelian(self) -> bool:
        if self._abelian is None:
            mult = self.mult
            self._abelian = all(
                mult[a][b] == mult[b][a]
                for a in range(self.order)
                for b in range(a + 1, self.order)
            )
        return self._abelian

    def is_nilpotent(self) -> bool:
        """True iff every Sylow subgroup is normal.

        Checked by counting: the p-elements form the unique Sylow
        p-subgroup exactly when there are p-part-of-|G| many of them.
        """
        orders = self.element_orders()
        from .numbers import factorize

        for p, k in factorize(self.order).items():
            p_part = p**k
            count = sum(1 for o in orders if p_part % o == 0)
            if count != p_part:
                return False
        return True

    def conjugate(self, g: int, by: int) -> int:
        return self.mult[self.mult[by][g]][self.inv[by]]

    def check_axioms(self) -> None:
        """Exhaustive associativity check, O(order^3). For tests."""
        mult = self.mult
        for a in range(self.order):
            for b in range(self.order):
                ab = mult[a][b]
                row_b = mult[b]
                row_ab = mult[ab]
                for c in range(self.order):
                    if row_ab[c] != mult[a][row_b[c]]:
                        raise AssertionError(f"associativity fails at {(a, b, c)}")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_rmul_chunks"] = None
        return state


class Subgroup:
    """A verified subgroup with an embedded group on its member set."""

    def __init__(self, parent: FiniteGroup, members):
        members = tuple(sorted(set(members)))
        if not members:
            raise BadParameter("subgroup must be non-empty")
        member_set = set(members)
        if parent.identity not in member_set:
            raise BadParameter("subgroup does not contain the identity")
        for g in members:
            if not (0 <= g < parent.order):
                raise BadParameter(f"element {g} outside the parent group")
            if parent.inv[g] not in member_set:
                raise BadParameter("subgroup is not closed under inverses")
            for h in members:
                if parent.mult[g][h] not in member_set:
                    raise BadParameter("subgroup is not closed under products")
        if parent.order % len(members) != 0:
            raise BadParameter("subgroup size does not divide the group order")
        self.parent = parent
        self.members = members
        self.member_set = frozenset(members)
        self.to_embedded = {g: i for i, g in enumerate(members)}
        table = [
            [self.to_embedded[parent.mult[a][b]] for b in members] for a in members
        ]
        self.embedded = FiniteGroup(
            f"sub[{len(members)}]of({parent.label})",
            table,
            identity=self.to_embedded[parent.identity],
        )

    @classmethod
    def generated_by(cls, parent: FiniteGroup, generators) -> "Subgroup":
        seen = {parent.identity}
        frontier = [parent.identity]
        gens = list(generators)
        while frontier:
            g = frontier.pop()
            for x in gens:
                for h in (parent.mult[g][x], parent.mult[x][g]):
                    if h not in seen:
                        seen.add(h)
                        frontier.append(h)
        return cls(parent, seen)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    def is_normal(self) -> bool:
        p = self.parent
        return all(
            p.conjugate(h, g) in self.member_set
            for g in range(p.order)
            for h in self.members
        )

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self.members)} of {self.parent.label!r})"


class Homomorphism:
    """Element-wise map between groups, verified on all pairs."""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, image):
        image = tuple(image)
        if len(image) != domain.order:
            raise BadParameter("image table has wrong length")
        for v in image:
            if not (0 <= v < codomain.order):
                raise BadParameter("image value outside the codomain")
        if image[domain.identity] != codomain.identity:
            raise BadParameter("homomorphism does not preserve the identity")
        dm, cm = domain.mult, codomain.mult
        for a in range(domain.order):
            ia = image[a]
            for b in range(domain.order):
                if image[dm[a][b]] != cm[ia][image[b]]:
                    raise BadParameter(f"not multiplicative at pair {(a, b)}")
        self.domain = domain
        self.codomain = codomain
        self.image = image
        self.kernel = Subgroup(
            domain,
            [g for g in range(domain.order) if image[g] == codomain.identity],
        )
        if domain.order != len(self.kernel) * len(set(image)):
            raise BadParameter("order equation |domain| = |kernel|*|image| fails")

    def __call__(self, g: int) -> int:
        return self.image[g]

    def map_terms(self, terms) -> list[int]:
        image = self.image
        return [image[g] for g in terms]

    def __repr__(self) -> str:
        return f"Homomorphism({self.domain.label!r} -> {self.codomain.label!r})"


def make_cyclic(n: int) -> FiniteGroup:
    """Cyclic group C_n; element i is the i-th power of the generator."""
    if n < 1:
        raise BadParameter(f"cyclic order must be positive, got {n}")
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    inv = [(-i) % n for i in range(n)]
    return FiniteGroup(
        f"cyclic:{n}", mult, inv=inv, structure=GroupStructure("cyclic", n=n)
    )


def make_semidirect(m: int, n: int, s: int) -> FiniteGroup:
    """C_m x| C_n: normal generator a of order n, b of order m, b a b^-1 = a^s.

    Elements are pairs (i, j) = a^i b^j encoded as index i*m + j.
    Requires gcd(s, n) = 1 and s^m = 1 (mod n) so that conjugation by b
    is an automorphism of order dividing m.
    """
    if m < 1 or n < 1:
        raise BadParameter(f"factors must be positive, got ({m}, {n})")
    if not (1 <= s <= n) or (s == n and n != 1):
        raise BadParameter(f"twist {s} outside [1, {max(n - 1, 1)}]")
    if gcd(s, n) != 1:
        raise InvalidTwist(f"gcd({s}, {n}) != 1, conjugation is not invertible")
    if pow(s, m, n) != 1 % n:
        raise InvalidTwist(f"{s}^{m} != 1 (mod {n}), twist order does not divide {m}")
    if m * n > MAX_ORDER:
        raise BadParameter(f"order {m * n} exceeds the cap {MAX_ORDER}")

    s_pow = [pow(s, j, n) for j in range(m)]
    order = m * n
    mult = [[0] * order for _ in range(order)]
    for i1 in range(n):
        for j1 in range(m):
            g = i1 * m + j1
            row = mult[g]
            sj = s_pow[j1]
            for i2 in range(n):
                for j2 in range(m):
                    row[i2 * m + j2] = ((i1 + i2 * sj) % n) * m + (j1 + j2) % m
    inv = [0] * order
    for i in range(n):
        for j in range(m):
            jj = (-j) % m
            ii = (-i * s_pow[jj]) % n if n > 1 else 0
            inv[i * m + j] = ii * m + jj
    return FiniteGroup(
        f"semidirect:{m},{n},{s}",
        mult,
        inv=inv,
        structure=GroupStructure("semidirect", m=m, n=n, s=s),
    )


def _order_two_extension(na: int, r: int, h: int, label: str, kind: str, k: int) -> FiniteGroup:
    """Group <a, b> with a^na = 1, b a b^-1 = a^r, b^2 = a^h.

    Elements are a^i b^j with j in {0, 1}, encoded as i*2 + j.
    """
    r %= na
    h %= na
    order = 2 * na
    if order > MAX_ORDER:
        raise BadParameter(f"order {order} exceeds the cap {MAX_ORDER}")
    if (r * r) % na != 1 % na or (h * (r - 1)) % na != 0:
        raise BadParameter("presentation is inconsistent")
    mult = [[0] * order for _ in range(order)]
    for i1 in range(na):
        for j1 in range(2):
            g = i1 * 2 + j1
            row = mult[g]
            rj = r if j1 else 1
            for i2 in range(na):
                for j2 in range(2):
                    i3 = (i1 + i2 * rj) % na
                    j3 = j1 + j2
                    if j3 == 2:
                        i3 = (i3 + h) % na
                        j3 = 0
                    row[i2 * 2 + j2] = i3 * 2 + j3
    return FiniteGroup(label, mult, structure=GroupStructure(kind, n=k))


def make_dihedral(k: int) -> FiniteGroup:
    """Dihedral group of order 2k (k = 1 gives C_2, k = 2 Klein four)."""
    if k < 1:
        raise BadParameter(f"dihedral parameter must be >= 1, got {k}")
    return _order_two_extension(k, -1, 0, f"dihedral:{k}", "dihedral", k)


def make_dicyclic(k: int) -> FiniteGroup:
    """Dicyclic group of order 4k: a^2k = 1, b^2 = a^k, b a b^-1 = a^-1 (k > 1)."""
    if k <= 1:
        raise BadParameter(f"dicyclic parameter must be > 1, got {k}")
    return _order_two_extension(2 * k, -1, k, f"dicyclic:{k}", "dicyclic", k)


def make_quaternion(k: int) -> FiniteGroup:
    """Generalized quaternion group of order 2^(k+1) (k > 1; k = 2 gives Q_8)."""
    if k <= 1:
        raise BadParameter(f"quaternion parameter must be > 1, got {k}")
    na = 2**k
    return _order_two_extension(na, -1, na // 2, f"quaternion:{k}", "quaternion", k)


def make_semidihedral(k: int) -> FiniteGroup:
    """Semidihedral group of order 2^(k+1): b a b = a^(2^(k-1) - 1) (k > 2)."""
    if k <= 2:
        raise BadParameter(f"semidihedral parameter must be > 2, got {k}")
    na = 2**k
    return _order_two_extension(
        na, na // 2 - 1, 0, f"semidihedral:{k}", "semidihedral", k
    )


def make_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product; pair (x, y) is encoded as x*|G2| + y."""
    order = g1.order * g2.order
    if order > MAX_ORDER:
        raise BadParameter(f"order {order} exceeds the cap {MAX_ORDER}")
    n2 = g2.order
    mult = [[0] * order for _ in range(order)]
    for x1 in range(g1.order):
        for y1 in range(n2):
            row = mult[x1 * n2 + y1]
            m1 = g1.mult[x1]
            m2 = g2.mult[y1]
            for x2 in range(g1.order):
                base = m1[x2] * n2
                for y2 in range(n2):
                    row[x2 * n2 + y2] = base + m2[y2]
    inv = [g1.inv[x] * n2 + g2.inv[y] for x in range(g1.order) for y in range(n2)]
    return FiniteGroup(
        f"product:{g1.label}*{g2.label}",
        mult,
        identity=g1.identity * n2 + g2.identity,
        inv=inv,
        structure=GroupStructure("product"),
    )


_NAMED = {
    "dihedral": make_dihedral,
    "dicyclic": make_dicyclic,
    "quaternion": make_quaternion,
    "semidihedral": make_semidihedral,
}


def make_named(kind: str, *args) -> FiniteGroup:
    if kind == "cyclic":
        return make_cyclic(*args)
    if kind == "semidirect":
        return make_semidirect(*args)
    if kind == "product":
        return make_product(*args)
    if kind in _NAMED:
        return _NAMED[kind](*args)
    raise BadParameter(f"unknown group kind {kind!r}")


def quotient(group: FiniteGroup, sub: Subgroup) -> tuple[FiniteGroup, Homomorphism]:
    """Quotient by a normal subgroup, with the canonical projection.

    Cosets are indexed in increasing order of their minimal member.
    """
    if sub.parent is not group:
        raise BadParameter("subgroup belongs to a different group")
    if not sub.is_normal():
        raise NotNormal(f"subgroup of order {len(sub)} is not normal")
    coset_rep = [-1] * group.order
    reps = []
    for g in range(group.order):
        if coset_rep[g] >= 0:
            continue
        members = [group.mult[g][h] for h in sub.members]
        rep = min(members)
        for x in members:
            coset_rep[x] = rep
        reps.append(rep)
    reps.sort()
    index_of = {rep: i for i, rep in enumerate(reps)}
    q = len(reps)
    mult = [
        [index_of[coset_rep[group.mult[a][b]]] for b in reps] for a in reps
    ]
    quot = FiniteGroup(
        f"({group.label})/N{len(sub)}", mult, identity=index_of[coset_rep[group.identity]]
    )
    proj = Homomorphism(group, quot, [index_of[coset_rep[g]] for g in range(group.order)])
    if proj.kernel.member_set != sub.member_set:
        raise NotNormal("projection kernel differs from the given subgroup")
    return quot, proj


def cpcp_normal_subgroup(group: FiniteGroup) -> tuple[Subgroup, Homomorphism]:
    """For G = C_m x| C_m, the normal subgroup N isomorphic to C_p x C_p
    (p the largest prime divisor of m) together with the projection onto
    the canonical C_(m/p) x| C_(m/p).

    All structural claims (order p^2, exponent p, normality, the twist
    congruence s^(m/p) = 1 mod m) are verified by enumeration.
    """
    st = group.structure
    if st is None or st.kind != "semidirect" or st.m != st.n:
        raise BadShape("expected a canonical semidirect group with m = n")
    m, s = st.m, st.s
    if m < 2:
        raise BadShape("m must be at least 2")
    p = largest_prime_factor(m)
    u = m // p  # n' * p^(k-1)
    if pow(s, u, m) != 1 % m:
        raise BadShape(f"twist congruence {s}^{u} = 1 (mod {m}) fails")

    # a = (1, 0) -> index m, b = (0, 1) -> index 1 under (i, j) -> i*m + j.
    gen_a = (u % m) * m
    gen_b = u % m
    sub = Subgroup.generated_by(group, [gen_a, gen_b])
    if len(sub) != p * p:
        raise BadShape(f"generated subgroup has order {len(sub)}, wanted {p * p}")
    for g in sub.members:
        if g != group.identity and group.element_order(g) != p:
            raise BadShape(f"member {g} has order {group.element_order(g)}, not {p}")
    if not sub.is_normal():
        raise BadShape("the constructed subgroup is not normal")

    t = m // p
    s_quot = s % t if t > 1 else 1
    target = make_semidirect(t, t, s_quot)
    image = [
        ((g // m) % t) * t + ((g % m) % t)  # (i, j) -> (i mod t, j mod t)
        for g in range(group.order)
    ]
    hom = Homomorphism(group, target, image)
    if hom.kernel.member_set != sub.member_set:
        raise BadShape("projection kernel is not the constructed subgroup")
    return sub, hom


def family_params(group: FiniteGroup) -> tuple[int, int, int] | None:
    """(m, n, s) such that the group is the canonical C_m x| C_(m*n),
    or None when the semidirect parameters do not have that shape."""
    st = group.structure
    if st is None or st.kind != "semidirect":
        return None
    if st.n % st.m != 0:
        return None
    return st.m, st.n // st.m, st.s


def twist_coprime_to_complement(group: FiniteGroup) -> bool | None:
    """Whether gcd(s, m) = 1 for a semidirect group (None otherwise).

    Recorded for inspection; only gcd(s, n) = 1 is enforced at build time.
    """
    st = group.structure
    if st is None or st.kind != "semidirect":
        return None
    return gcd(st.s, st.m) == 1


def _parse_int_args(text: str, count: int, offset: int) -> list[int]:
    parts = text.split(",")
    if len(parts) != count:
        raise ParseError(f"expected {count} integer parameters", offset)
    out = []
    for part in parts:
        if not part or not (part.isdigit() or (part[0] == "-" and part[1:].isdigit())):
            raise ParseError(f"bad integer {part!r}", offset + text.find(part))
        out.append(int(part))
    return out


def parse_group_spec(text: str, _offset: int = 0) -> FiniteGroup:
    """Parse a group spec string.

    Grammar: "cyclic:n", "semidirect:m,n,s", "product:<spec>*<spec>",
    "dihedral:k", "dicyclic:k", "quaternion:k", "semidihedral:k".
    """
    if not text:
        raise ParseError("empty group spec", _offset)
    kind, sep, rest = text.partition(":")
    if not sep:
        raise ParseError(f"missing ':' in spec {text!r}", _offset + len(text))
    if kind == "product":
        star_positions = [i for i, ch in enumerate(rest) if ch == "*"]
        if not star_positions:
            raise ParseError("product spec needs '*'", _offset + len(kind) + 1)
        last_error: ParseError | None = None
        for pos in star_positions:
            left, right = rest[:pos], rest[pos + 1 :]
            try:
                g1 = parse_group_spec(left, _offset + len(kind) + 1)
                g2 = parse_group_spec(right, _offset + len(kind) + 2 + pos)
                return make_product(g1, g2)
            except ParseError as exc:
                last_error = exc
        assert last_error is not None
        raise last_error
    base = _offset + len(kind) + 1
    if kind == "cyclic":
        (n,) = _parse_int_args(rest, 1, base)
        return make_cyclic(n)
    if kind == "semidirect":
        m, n, s = _parse_int_args(rest, 3, base)
        return make_semidirect(m, n, s)
    if kind in _NAMED:
        (k,) = _parse_int_args(rest, 1, base)
        return _NAMED[kind](k)
    raise ParseError(f"unknown group kind {kind!r}", _offset)
