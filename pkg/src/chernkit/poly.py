"""Sparse graded polynomials with exact or modular integer coefficients.

A :class:`PolyRing` fixes the generators, their degrees and the coefficient
modulus.  Two optional truncations turn it into a quotient ring:

* ``caps[i]`` kills every monomial with exponent of generator ``i`` above the cap
  (the relation ``h_i^(n_i+1) = 0`` of a projective space);
* ``top_degree`` kills every monomial of weighted degree above it.

Both truncations are monomial ideals, so reducing after each product is a
ring morphism.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import ParseError, RingMismatch

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    modulus: int | None = None
    caps: tuple[int | None, ...] | None = None
    top_degree: int | None = None
    kind: str = "formal"

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        if self.caps is not None and len(self.caps) != len(self.names):
            raise ValueError("caps and names differ in length")
        if self.modulus is not None and self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def with_modulus(self, modulus: int | None) -> PolyRing:
        return PolyRing(self.names, self.degrees, modulus, self.caps, self.top_degree, self.kind)

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {(0,) * self.nvars: 1})

    def constant(self, c: int) -> Poly:
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, which: int | str) -> Poly:
        i = self.names.index(which) if isinstance(which, str) else which
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list[Poly]:
        return [self.gen(i) for i in range(self.nvars)]

    def weight(self, exps: Exponents) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def keeps(self, exps: Exponents) -> bool:
        if self.caps is not None:
            for e, c in zip(exps, self.caps):
                if c is not None and e > c:
                    return False
        if self.top_degree is not None and self.weight(exps) > self.top_degree:
            return False
        return True

    def monomials(self, degree: int) -> list[Exponents]:
        """All surviving monomials of the given weighted degree, in sorted order."""
        out: list[Exponents] = []

        def rec(i: int, left: int, acc: list[int]):
            if i == self.nvars:
                if left == 0:
                    out.append(tuple(acc))
                return
            d = self.degrees[i]
            top = left // d if d > 0 else 0
            if self.caps is not None and self.caps[i] is not None:
                top = min(top, self.caps[i])
            for e in range(top + 1):
                acc.append(e)
                rec(i + 1, left - e * d, acc)
                acc.pop()

        rec(0, degree, [])
        return sorted(e for e in out if self.keeps(e))

    def monomial_str(self, exps: Exponents) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def parse(self, text: str) -> Poly:
        return parse_poly(self, text)


class Poly:
    """Immutable polynomial; coefficients are normalised on construction."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponents, int] | None = None, *, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = dict(terms)
        else:
            mod = ring.modulus
            clean: dict[Exponents, int] = {}
            for e, c in (terms or {}).items():
                if len(e) != ring.nvars:
                    raise ValueError(f"exponent {e} does not fit {ring.nvars} variables")
                if mod is not None:
                    c %= mod
                if c and ring.keeps(e):
                    clean[e] = clean.get(e, 0) + c
            if mod is not None:
                clean = {e: c % mod for e, c in clean.items() if c % mod}
            self.terms = clean
        self._hash = None

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring.kind} ring vs {other.ring.kind} ring")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> Poly:
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        mod = ring.modulus
        out: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if not ring.keeps(e):
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        if mod is not None:
            out = {e: c % mod for e, c in out.items() if c % mod}
        else:
            out = {e: c for e, c in out.items() if c}
        return Poly(ring, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection -------------------------------------------------------
    def coefficient(self, exps: Exponents) -> int:
        return self.terms.get(tuple(exps), 0)

    def degrees(self) -> set[int]:
        return {self.ring.weight(e) for e in self.terms}

    def is_homogeneous(self, degree: int | None = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return degree is None or ds == {degree}

    def component(self, degree: int) -> Poly:
        w = self.ring.weight
        return Poly(self.ring, {e: c for e, c in self.terms.items() if w(e) == degree}, _clean=True)

    def components(self) -> dict[int, Poly]:
        return {d: self.component(d) for d in sorted(self.degrees())}

    def truncate(self, max_degree: int) -> Poly:
        w = self.ring.weight
        return Poly(self.ring, {e: c for e, c in self.terms.items() if w(e) <= max_degree}, _clean=True)

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        """Terms by increasing degree, then reverse-lexicographic exponents."""
        w = self.ring.weight
        return sorted(self.terms.items(), key=lambda t: (w(t[0]), tuple(-x for x in t[0])))

    def substitute(self, images: list[Poly], target: PolyRing | None = None) -> Poly:
        """Ring morphism sending generator ``i`` to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per generator is required")
        if target is None:
            target = images[0].ring if images else self.ring
        powers: dict[tuple[int, int], Poly] = {}

        def power(i: int, k: int) -> Poly:
            key = (i, k)
            if key not in powers:
                powers[key] = target.one() if k == 0 else power(i, k - 1) * images[i]
            return powers[key]

        acc: dict[Exponents, int] = {}
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
                    if term.is_zero():
                        break
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Poly(target, acc)

    def change_ring(self, ring: PolyRing) -> Poly:
        """Reinterpret the same exponent table over a ring with the same generators."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatch("generator counts differ")
        return Poly(ring, self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = self.ring.monomial_str(e)
            if mono == "1":
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append(f"-{mono}")
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"


def elementary(values: list[Poly], k: int, ring: PolyRing | None = None) -> Poly:
    """k-th elementary symmetric polynomial of the given ring elements."""
    if ring is None:
        ring = values[0].ring
    if k == 0:
        return ring.one()
    # Vieta recursion keeps this polynomial in len(values)
    e = [ring.one()] + [ring.zero()] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e[k]


def elementary_all(values: Iterable[Poly], top: int, ring: PolyRing) -> list[Poly]:
    e = [ring.one()] + [ring.zero()] * top
    for v in values:
        for j in range(top, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e


def distinct_permutations(items: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a multiset, each produced once."""
    pool = sorted(items, reverse=True)
    n = len(pool)
    counts: dict[int, int] = {}
    for x in pool:
        counts[x] = counts.get(x, 0) + 1
    values = sorted(counts, reverse=True)
    acc: list[int] = []

    def rec():
        if len(acc) == n:
            yield tuple(acc)
            return
        for v in values:
            if counts[v]:
                counts[v] -= 1
                acc.append(v)
                yield from rec()
                acc.pop()
                counts[v] += 1

    yield from rec()


def subsets_of_size(n: int, k: int) -> Iterator[tuple[int, ...]]:
    return combinations(range(n), k)


_TERM = re.compile(r"\s*([+-]?)\s*([^+-]+)")


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """Parse ``"2*h1^2*h2 - h3 + 1"`` style sums of monomials."""
    text = text.strip()
    if not text or text == "0":
        return ring.zero()
    pos = 0
    terms: dict[Exponents, int] = {}
    for m in _TERM.finditer(text):
        if m.start() != pos and text[pos:m.start()].strip():
            raise ParseError(f"cannot parse {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coef = sign
        exps = [0] * ring.nvars
        for factor in m.group(2).split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            if factor.isdigit():
                coef *= int(factor)
                continue
            name, _, power = factor.partition("^")
            name = name.strip()
            if name not in ring.names:
                raise ParseError(f"unknown generator {name!r}; ring has {', '.join(ring.names)}")
            try:
                k = int(power) if power else 1
            except ValueError:
                raise ParseError(f"bad exponent in {factor!r}") from None
            exps[ring.names.index(name)] += k
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coef
    if text[pos:].strip():
        raise ParseError(f"cannot parse {text!r}")
    return Poly(ring, terms)
