"""Partitions and the passage between Chern roots and Chern classes.

A partition ``(1^r1, 2^r2, ...)`` indexes the characteristic class obtained as
the coefficient of ``d_1^r1 d_2^r2 ...`` in ``prod_l (sum_i d_i x_l^i)``.  In
root variables this is the monomial symmetric function of the partition with
``r_i`` parts equal to ``i``; :func:`express_in_chern` rewrites any symmetric
polynomial in the elementary symmetric polynomials ``c_1, c_2, ...``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Mapping

from .errors import EmptyPartition, NotSymmetric, ParseError
from .poly import Poly, PolyRing, distinct_permutations


@dataclass(frozen=True, order=True)
class Partition:
    """Multiplicity form ``(r_1, ..., r_k)``; trailing zeros are stripped."""

    multiplicities: tuple[int, ...] = ()

    def __post_init__(self):
        mult = tuple(int(r) for r in self.multiplicities)
        if any(r < 0 for r in mult):
            raise ValueError("multiplicities must be non-negative")
        while mult and mult[-1] == 0:
            mult = mult[:-1]
        object.__setattr__(self, "multiplicities", mult)

    @classmethod
    def from_parts(cls, parts) -> Partition:
        parts = [int(p) for p in parts if p]
        if any(p < 0 for p in parts):
            raise ValueError("parts must be positive")
        top = max(parts, default=0)
        mult = [0] * top
        for p in parts:
            mult[p - 1] += 1
        return cls(tuple(mult))

    @classmethod
    def from_dict(cls, mult: Mapping[int, int]) -> Partition:
        top = max((i for i, r in mult.items() if r), default=0)
        return cls(tuple(mult.get(i, 0) for i in range(1, top + 1)))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse ``"1:4,3:1"``; repeated indices accumulate."""
        text = text.strip()
        mult: dict[int, int] = {}
        if not text:
            return cls()
        for item in text.split(","):
            i, sep, r = item.partition(":")
            try:
                i, r = int(i), int(r)
            except ValueError:
                raise ParseError(f"bad partition item {item!r}; expected 'i:r_i'") from None
            if not sep or i < 1 or r < 0:
                raise ParseError(f"bad partition item {item!r}; expected 'i:r_i'")
            mult[i] = mult.get(i, 0) + r
        return cls.from_dict(mult)

    @property
    def degree(self) -> int:
        return sum(i * r for i, r in enumerate(self.multiplicities, start=1))

    @property
    def inner_degree(self) -> int:
        return sum(self.multiplicities)

    @property
    def parts(self) -> tuple[int, ...]:
        """Non-increasing parts, e.g. ``(3, 1, 1, 1, 1)`` for ``1:4,3:1``."""
        out: list[int] = []
        for i in range(len(self.multiplicities), 0, -1):
            out.extend([i] * self.multiplicities[i - 1])
        return tuple(out)

    def mult(self, i: int) -> int:
        return self.multiplicities[i - 1] if 1 <= i <= len(self.multiplicities) else 0

    def __str__(self):
        return ",".join(f"{i}:{r}" for i, r in enumerate(self.multiplicities, start=1) if r)

    def power_notation(self) -> str:
        inner = ",".join(f"{i}^{r}" for i, r in enumerate(self.multiplicities, start=1) if r)
        return f"({inner})"


def partitions_of(n: int, max_part: int | None = None, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as non-increasing tuples, in decreasing lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def all_partitions(max_degree: int) -> list[Partition]:
    """Every non-empty partition of degree at most ``max_degree``."""
    return [Partition.from_parts(p) for n in range(1, max_degree + 1) for p in partitions_of(n)]


# -- variable regimes -----------------------------------------------------

def roots_ring(L: int, modulus: int | None = None) -> PolyRing:
    return PolyRing(tuple(f"x{i}" for i in range(1, L + 1)), (1,) * L, modulus, kind="roots")


def chern_ring(L: int, modulus: int | None = None, top_degree: int | None = None) -> PolyRing:
    return PolyRing(
        tuple(f"c{i}" for i in range(1, L + 1)), tuple(range(1, L + 1)), modulus,
        top_degree=top_degree, kind="chern",
    )


def elementary_in_roots(ring: PolyRing, k: int) -> Poly:
    L = ring.nvars
    if k > L:
        return ring.zero()
    terms = {}
    for perm in distinct_permutations([1] * k + [0] * (L - k)):
        terms[perm] = 1
    return Poly(ring, terms)


def chern_to_roots(f: Poly, roots: PolyRing) -> Poly:
    """Substitute ``c_i -> e_i(x_1..x_L)``."""
    images = [elementary_in_roots(roots, i) for i in range(1, f.ring.nvars + 1)]
    return f.substitute(images, roots)


def monomial_symmetric(parts: tuple[int, ...], ring: PolyRing) -> Poly:
    L = ring.nvars
    if len(parts) > L:
        return ring.zero()
    padded = list(parts) + [0] * (L - len(parts))
    return Poly(ring, {perm: 1 for perm in distinct_permutations(padded)})


def char_class_in_roots(r: Partition, L: int, modulus: int | None = None) -> Poly:
    """The class indexed by ``r`` as a polynomial in ``L`` Chern roots.

    Reading off the coefficient of ``prod d_i^{r_i}`` assigns the exponent ``i``
    to exactly ``r_i`` distinct roots, which is the monomial symmetric function
    of ``r.parts``.  Zero when ``r`` has more parts than there are roots.
    """
    if L < 1:
        raise ValueError("need at least one root variable")
    return monomial_symmetric(r.parts, roots_ring(L, modulus))


# -- elementary-symmetric reduction ---------------------------------------

@lru_cache(maxsize=None)
def _count_01(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """Number of 0/1 matrices with the given (sorted) row sums and column sums."""
    if not cols:
        return 1 if not any(rows) else 0
    col, rest = cols[0], cols[1:]
    groups = sorted(Counter(rows).items(), reverse=True)
    total = 0

    def rec(g: int, need: int, weight: int, new_rows: list[int]):
        nonlocal total
        if g == len(groups):
            if need == 0:
                total += weight * _count_01(tuple(sorted(new_rows, reverse=True)), rest)
            return
        value, mult = groups[g]
        top = min(mult, need) if value > 0 else 0
        for t in range(top + 1):
            rec(g + 1, need - t, weight * comb(mult, t),
                new_rows + [value - 1] * t + [value] * (mult - t))

    rec(0, col, 1, [])
    return total


def _conjugate(parts: tuple[int, ...]) -> tuple[int, ...]:
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def _e_product_in_monomials(lead: tuple[int, ...], L: int) -> dict[tuple[int, ...], int]:
    """Monomial-basis expansion of ``prod_i e_i^(lead_i - lead_(i+1))`` in ``L`` roots.

    The coefficient of ``m_mu`` counts 0/1 matrices whose rows are the chosen
    elementary factors and whose column sums are ``mu``.
    """
    rows = _conjugate(lead)
    n = sum(lead)
    out = {}
    for mu in partitions_of(n, max_len=L):
        if mu > lead:
            continue
        k = _count_01(rows, mu)
        if k:
            out[mu] = k
    return out


def express_monomial_basis(coeffs: Mapping[tuple[int, ...], int], L: int,
                           modulus: int | None = None) -> Poly:
    """Rewrite ``sum coeffs[mu] * m_mu`` (in ``L`` roots) in Chern classes.

    Lexicographic elimination: the largest remaining ``mu`` is the leading
    monomial of ``prod e_i^(mu_i - mu_(i+1))``; subtract and repeat.
    """
    work = {tuple(mu): c for mu, c in coeffs.items() if c}
    if modulus is not None:
        work = {mu: c % modulus for mu, c in work.items() if c % modulus}
    ring = chern_ring(L, modulus)
    out: dict[tuple[int, ...], int] = {}
    while work:
        lead = max(work)
        c = work[lead]
        if len(lead) > L:
            raise NotSymmetric(f"monomial with {len(lead)} parts cannot occur in {L} roots")
        padded = list(lead) + [0] * (L - len(lead))
        e_exps = tuple(padded[i] - (padded[i + 1] if i + 1 < L else 0) for i in range(L))
        out[e_exps] = out.get(e_exps, 0) + c
        for mu, k in _e_product_in_monomials(lead, L).items():
            v = work.get(mu, 0) - c * k
            if modulus is not None:
                v %= modulus
            if v:
                work[mu] = v
            else:
                work.pop(mu, None)
    return Poly(ring, out)


def monomial_coefficients(s: Poly) -> dict[tuple[int, ...], int]:
    """Coefficients of ``s`` on the monomial symmetric basis; checks symmetry."""
    groups: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}
    for e, c in s.terms.items():
        key = tuple(sorted((x for x in e if x), reverse=True))
        groups.setdefault(key, {})[e] = c
    out = {}
    L = s.ring.nvars
    for mu, members in groups.items():
        padded = list(mu) + [0] * (L - len(mu))
        expected = factorial(L)
        for v in Counter(padded).values():
            expected //= factorial(v)
        values = set(members.values())
        if len(members) != expected or len(values) != 1:
            raise NotSymmetric(f"orbit of monomial {mu} is incomplete or unevenly weighted")
        out[mu] = values.pop()
    return out


def express_in_chern(s: Poly) -> Poly:
    """Chern-class expression of a symmetric polynomial in root variables."""
    if s.ring.kind != "roots":
        raise ValueError("expected a polynomial in root variables")
    return express_monomial_basis(monomial_coefficients(s), s.ring.nvars, s.ring.modulus)


# -- the top-class coefficient --------------------------------------------

def _require_nonempty(r: Partition):
    if r.inner_degree == 0:
        raise EmptyPartition("the empty partition has no top-class coefficient")


def kappa_formula(r: Partition) -> int:
    """Coefficient of ``c_n`` (``n = ||r||``) in the expansion of the class of ``r``."""
    _require_nonempty(r)
    n, k = r.degree, r.inner_degree
    multinom = factorial(k)
    for m in r.multiplicities:
        multinom //= factorial(m)
    num = n * multinom
    q, rem = divmod(num, k)
    assert rem == 0, f"non-integral top coefficient for {r}"
    return (-1) ** (n - k) * q


def kappa_bruteforce(r: Partition) -> int:
    _require_nonempty(r)
    n = r.degree
    expr = express_in_chern(char_class_in_roots(r, n))
    top = [0] * n
    top[n - 1] = 1
    return expr.coefficient(tuple(top))


def chern_exponents(r: Partition, L: int) -> tuple[int, ...]:
    """Exponent vector of the Chern monomial ``c_1^r1 c_2^r2 ...`` in ``L`` variables."""
    if len(r.multiplicities) > L:
        raise ValueError("partition uses a Chern class beyond the variable count")
    return tuple(r.multiplicities) + (0,) * (L - len(r.multiplicities))


def power_sum_series(n_max: int, L: int) -> list[Poly]:
    """Coefficients of ``t^n`` in ``-t Q'(t) / Q(t)``, ``Q(t) = sum_j (-1)^j c_j t^j``.

    Power series division in the Chern ring; ``c_j = 0`` for ``j > L``.
    """
    ring = chern_ring(L)
    Q = [ring.one()] + [(-1) ** j * ring.gen(j - 1) if j <= L else ring.zero() for j in range(1, n_max + 1)]
    N = [ring.zero()] + [-(j * Q[j]) for j in range(1, n_max + 1)]
    F = [ring.zero()] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = N[n]
        for j in range(1, n + 1):
            acc = acc - Q[j] * F[n - j]
        F[n] = acc
    return F


def evaluate_class(r: Partition, roots: list[Poly]) -> Poly:
    """The class of ``r`` for a sum of line classes with the given first Chern classes."""
    ring = roots[0].ring
    parts = r.parts
    if len(parts) > len(roots):
        return ring.zero()
    padded = list(parts) + [0] * (len(roots) - len(parts))
    acc = ring.zero()
    for perm in distinct_permutations(padded):
        term = ring.one()
        for x, e in zip(roots, perm):
            if e:
                term = term * x**e
        acc = acc + term
    return acc
