"""Intersection combinatorics of blowing up all faces of a normal-crossing divisor.

Subsets of ``{1..N}`` are bitmasks (bit ``i-1`` for element ``i``).  The
arrangement ring is generated by one class ``rho~_I`` per non-empty subset
``I``, subject to ``rho~_K * rho~_L = 0`` whenever ``K`` and ``L`` are
incomparable; optionally ``rho~_I = 0`` for ``|I|`` above a dimension cap.
Surviving monomials are therefore chains (with multiplicities) and form a
basis.  Self-intersections are left alone.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import EmptySubsetGiven, GroundMismatch, ParseError

Monomial = tuple[int, ...]


def popcount(x: int) -> int:
    return bin(x).count("1")


def mask_of(subset: Iterable[int]) -> int:
    m = 0
    for i in subset:
        m |= 1 << (i - 1)
    return m


def elements_of(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def subset_str(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


def _sort_key(mask: int) -> tuple[int, int]:
    return popcount(mask), mask


def comparable(a: int, b: int) -> bool:
    return a & b == a or a & b == b


# -- good families ---------------------------------------------------------

@dataclass(frozen=True)
class GoodFamily:
    """Upward-closed family of non-empty subsets of ``{1..N}``."""

    N: int
    members: frozenset[int]

    def __post_init__(self):
        full = (1 << self.N) - 1
        for J in self.members:
            if J == 0 or J & ~full:
                raise ValueError(f"{J:b} is not a non-empty subset of 1..{self.N}")
        for J in self.members:
            for i in range(self.N):
                if not self.members.__contains__(J | 1 << i):
                    raise ValueError(f"family is not upward closed at {subset_str(J)}")

    def minimal(self) -> list[int]:
        return sorted(
            (J for J in self.members if not any(K != J and K & J == K for K in self.members)),
            key=_sort_key,
        )

    def __str__(self):
        mins = self.minimal()
        return "".join("[" + ",".join(map(str, elements_of(m))) + "]" for m in mins) or "[]"

    def __len__(self):
        return len(self.members)


def upward_closure(N: int, generators: Iterable[int]) -> frozenset[int]:
    full = (1 << N) - 1
    out = set()
    for g in generators:
        free = full & ~g
        sub = free
        while True:
            out.add(g | sub)
            if sub == 0:
                break
            sub = (sub - 1) & free
    return frozenset(out)


def family_from_minimal(N: int, minimal: Iterable[Iterable[int] | int]) -> GoodFamily:
    gens = []
    for s in minimal:
        m = s if isinstance(s, int) else mask_of(s)
        if m == 0:
            raise EmptySubsetGiven("the empty subset is not a blow-up center")
        if m >> N:
            raise ValueError(f"subset {subset_str(m)} exceeds ground size {N}")
        gens.append(m)
    return GoodFamily(N, upward_closure(N, gens))


def principal(N: int, subset: Iterable[int] | int) -> GoodFamily:
    """``U_I = {J : I subset of J}``."""
    return family_from_minimal(N, [subset])


def _same_ground(*families: GoodFamily) -> int:
    Ns = {f.N for f in families}
    if len(Ns) != 1:
        raise GroundMismatch(f"ground sizes differ: {sorted(Ns)}")
    return Ns.pop()


def family_intersect(U: GoodFamily, W: GoodFamily) -> GoodFamily:
    return GoodFamily(_same_ground(U, W), U.members & W.members)


def family_union(U: GoodFamily, W: GoodFamily) -> GoodFamily:
    return GoodFamily(_same_ground(U, W), U.members | W.members)


def parse_family(N: int, text: str) -> GoodFamily:
    """``"[1][2,3]"`` lists minimal generators; ``"[]"`` or ``""`` is the empty family."""
    text = text.strip()
    if text in ("", "[]"):
        return GoodFamily(N, frozenset())
    groups = re.findall(r"\[([^\]]*)\]", text)
    if "".join(f"[{g}]" for g in groups) != text.replace(" ", ""):
        raise ParseError(f"cannot parse family {text!r}")
    subsets = []
    for g in groups:
        try:
            subsets.append([int(x) for x in g.split(",") if x.strip()])
        except ValueError:
            raise ParseError(f"bad subset [{g}]") from None
    return family_from_minimal(N, subsets)


def antichains(N: int) -> Iterator[tuple[int, ...]]:
    """All antichains of non-empty subsets of ``{1..N}`` (including the empty one)."""
    subsets = sorted(range(1, 1 << N), key=_sort_key)

    def rec(start: int, chosen: list[int]):
        yield tuple(chosen)
        for i in range(start, len(subsets)):
            s = subsets[i]
            if all(not comparable(s, c) for c in chosen):
                chosen.append(s)
                yield from rec(i + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def good_families(N: int) -> list[GoodFamily]:
    """Every good family on ``{1..N}``, enumerated once via its minimal antichain."""
    return [GoodFamily(N, upward_closure(N, a)) for a in antichains(N)]


# -- the arrangement ring --------------------------------------------------

@dataclass(frozen=True)
class ArrangementRing:
    N: int
    modulus: int | None = None
    dimension_cap: int | None = None
    relations: bool = True

    def zero(self) -> ArrangementElement:
        return ArrangementElement(self, {})

    def one(self) -> ArrangementElement:
        return ArrangementElement(self, {(): 1})

    def gen(self, subset: Iterable[int] | int) -> ArrangementElement:
        m = subset if isinstance(subset, int) else mask_of(subset)
        if m == 0 or m >> self.N:
            raise ValueError("generators are indexed by non-empty subsets of the ground set")
        return ArrangementElement(self, {(m,): 1})

    def keeps(self, mono: Monomial) -> bool:
        if self.dimension_cap is not None and any(popcount(I) > self.dimension_cap for I in mono):
            return False
        if self.relations:
            # sorted by size, so a chain only needs consecutive containments
            for a, b in zip(mono, mono[1:]):
                if a & b != a:
                    return False
        return True


class ArrangementElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: ArrangementRing, terms: Mapping[Monomial, int]):
        self.ring = ring
        mod = ring.modulus
        clean = {}
        for mono, c in terms.items():
            mono = tuple(sorted(mono, key=_sort_key))
            if mod is not None:
                c %= mod
            if c and ring.keeps(mono):
                clean[mono] = clean.get(mono, 0) + c
        if mod is not None:
            clean = {k: v % mod for k, v in clean.items() if v % mod}
        self.terms = {k: v for k, v in clean.items() if v}

    def _check(self, other: ArrangementElement):
        if other.ring != self.ring:
            raise GroundMismatch("elements of different arrangement rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = ArrangementElement(self.ring, {(): other})
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return ArrangementElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return ArrangementElement(self.ring, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ArrangementElement(self.ring, {k: other * v for k, v in self.terms.items()})
        self._check(other)
        out: dict[Monomial, int] = {}
        keeps = self.ring.keeps
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                mono = tuple(sorted(k1 + k2, key=_sort_key))
                if keeps(mono):
                    out[mono] = out.get(mono, 0) + v1 * v2
        return ArrangementElement(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ArrangementElement):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), [_sort_key(m) for m in t[0]]))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono, c in self.sorted_terms():
            counts: dict[int, int] = {}
            for I in mono:
                counts[I] = counts.get(I, 0) + 1
            body = "*".join(
                f"r{subset_str(I)}" + (f"^{k}" if k > 1 else "")
                for I, k in sorted(counts.items(), key=lambda t: _sort_key(t[0]))
            ) or "1"
            pieces.append(body if c == 1 else f"{c}*{body}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"ArrangementElement({self})"


def rho_of(U: GoodFamily, ring: ArrangementRing) -> ArrangementElement:
    """``rho_U = sum_{J in U} rho~_J``."""
    if U.N != ring.N:
        raise GroundMismatch(f"family on {U.N} points, ring on {ring.N}")
    return ArrangementElement(ring, {(J,): 1 for J in U.members})


def elementary_symmetric(values: list[ArrangementElement], ring: ArrangementRing) -> list[ArrangementElement]:
    """``[e_0, ..., e_n]`` of the values; coefficients of ``prod (t + v)``."""
    e = [ring.one()] + [ring.zero()] * len(values)
    for v in values:
        for j in range(len(values), 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e


@dataclass
class Verification:
    passed: bool
    lhs: list[ArrangementElement]
    rhs: list[ArrangementElement]
    witness: Monomial | None = None
    detail: str = ""

    def witness_str(self) -> str | None:
        if self.witness is None:
            return None
        return "*".join(f"r{subset_str(I)}" for I in self.witness)


def _compare(lhs: list[ArrangementElement], rhs: list[ArrangementElement], start: int = 0) -> Verification:
    for i, (a, b) in enumerate(zip(lhs, rhs), start=start):
        diff = a - b
        if not diff.is_zero():
            witness = diff.sorted_terms()[0][0]
            return Verification(False, lhs, rhs, witness, f"coefficient e_{i} differs")
    return Verification(True, lhs, rhs)


def verify_per_ob(U: GoodFamily, W: GoodFamily, *, relations: bool = True,
                  modulus: int | None = None) -> Verification:
    """``(t - rho_U)(t - rho_W) = (t - rho_{U cap W})(t - rho_{U cup W})``.

    ``lhs``/``rhs`` hold the sums and the products of the two roots.
    """
    N = _same_ground(U, W)
    ring = ArrangementRing(N, modulus, relations=relations)
    a, b = rho_of(U, ring), rho_of(W, ring)
    c, d = rho_of(family_intersect(U, W), ring), rho_of(family_union(U, W), ring)
    return _compare([a + b, a * b], [c + d, c * d], start=1)


def w_families(families: list[GoodFamily]) -> list[GoodFamily]:
    """``W_l = union over |P| = l of the intersection of U_k for k in P``."""
    N = _same_ground(*families)
    out = []
    for l in range(1, len(families) + 1):
        members: set[int] = set()
        for P in combinations(families, l):
            inter = P[0].members
            for f in P[1:]:
                inter = inter & f.members
            members |= inter
        out.append(GoodFamily(N, frozenset(members)))
    return out


def verify_lem_dva(families: list[GoodFamily], *, modulus: int | None = None,
                   dimension_cap: int | None = None) -> Verification:
    """``prod_k (t - rho_{U_k}) = prod_l (t - rho_{W_l})``, coefficient by coefficient."""
    if not families:
        raise ValueError("need at least one family")
    N = _same_ground(*families)
    ring = ArrangementRing(N, modulus, dimension_cap)
    W = w_families(families)
    for a, b in zip(W, W[1:]):
        assert b.members <= a.members, "W_l must shrink as l grows"
    lhs = elementary_symmetric([rho_of(U, ring) for U in families], ring)
    rhs = elementary_symmetric([rho_of(w, ring) for w in W], ring)
    return _compare(lhs, rhs)


@dataclass
class MainConstruction:
    ring: ArrangementRing
    pullbacks: list[ArrangementElement]
    b: list[ArrangementElement]
    e_pullbacks: list[ArrangementElement]
    e_b: list[ArrangementElement]
    chern_equal: bool
    cap_vanishing: bool
    top_is_chain_product: bool

    @property
    def ok(self) -> bool:
        return self.chern_equal and self.cap_vanishing and self.top_is_chain_product

    @property
    def effective_rank(self) -> int:
        return sum(1 for x in self.b if not x.is_zero())


def main_construction(N: int, dimension_cap: int | None = None, modulus: int | None = None) -> MainConstruction:
    """Pullbacks ``sum_{I ni i} rho~_I`` against ``b_j = sum_{|J| >= j} rho~_J``."""
    if N < 1:
        raise ValueError("N must be positive")
    ring = ArrangementRing(N, modulus, dimension_cap)
    subsets = range(1, 1 << N)
    pullbacks = [ArrangementElement(ring, {(I,): 1 for I in subsets if I >> i & 1}) for i in range(N)]
    b = [ArrangementElement(ring, {(J,): 1 for J in subsets if popcount(J) >= j}) for j in range(1, N + 1)]
    e_pull = elementary_symmetric(pullbacks, ring)
    e_b = elementary_symmetric(b, ring)
    chern_equal = all(x == y for x, y in zip(e_pull, e_b))
    cap = N if dimension_cap is None else dimension_cap
    cap_vanishing = all(b[j - 1].is_zero() for j in range(cap + 1, N + 1))
    prod = ring.one()
    for x in b:
        prod = prod * x
    top_is_chain_product = e_b[N] == prod
    if dimension_cap is None:
        top_is_chain_product = top_is_chain_product and b[N - 1] == ring.gen((1 << N) - 1)
    return MainConstruction(ring, pullbacks, b, e_pull, e_b, chern_equal, cap_vanishing, top_is_chain_product)
