"""Formal model for scheduler certificates.

The ambient ring is the universal Chern ring ``Z/p^m[c_1..c_D]`` truncated above
degree ``D``: the classes of a bundle with enough roots.  Two ideals sit inside:

* the *vanishing* ideal, generated by ``c_1..c_(r-1)``, models ``c_i(V) = 0``;
* the *numerically trivial* ideal adds ``u = c_r``.

With ``Z/p`` coefficients both are closed under the total Steenrod operation,
because Steenrod operations preserve both zero classes and numerically
trivial ones.  Membership is decided degree by degree as lattice membership,
which stays exact over ``Z/p^m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import PreconditionViolated, WrongCoefficients
from ..modp import check_prime
from ..poly import Exponents, Poly, PolyRing
from ..symfunc import chern_ring
from .steenrod import steenrod_on_chern_ring
from .vector import ChernVector


class Lattice:
    """Integer row lattice (plus ``modulus * Z^n``) in echelon form."""

    def __init__(self, n: int, modulus: int | None = None):
        self.n = n
        self.modulus = modulus
        self.pivots: dict[int, list[int]] = {}
        if modulus is not None:
            for i in range(n):
                self.add([modulus if j == i else 0 for j in range(n)])

    def add(self, v: list[int]) -> None:
        v = list(v)
        for col in range(self.n):
            if not v[col]:
                continue
            row = self.pivots.get(col)
            if row is None:
                if v[col] < 0:
                    v = [-a for a in v]
                self.pivots[col] = v
                return
            # extended gcd merges the two rows into a new pivot and a leftover
            a, b = row[col], v[col]
            g, s, t = _xgcd(a, b)
            new = [s * x + t * y for x, y in zip(row, v)]
            rest = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
            self.pivots[col] = new
            v = rest
        # v is now zero

    def contains(self, v: list[int]) -> bool:
        v = list(v)
        for col in sorted(self.pivots):
            if v[col]:
                row = self.pivots[col]
                q, r = divmod(v[col], row[col])
                if r:
                    return False
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class DesignatedIdeal:
    """Ideal generated by homogeneous polynomials, decided degree by degree."""

    def __init__(self, ring: PolyRing, generators: list[Poly], max_degree: int):
        self.ring = ring
        self.max_degree = max_degree
        self.generators: list[Poly] = []
        self._bases: dict[int, list[Exponents]] = {}
        self._lattices: dict[int, Lattice] = {}
        for g in generators:
            self.add_generator(g)

    def _basis(self, d: int) -> list[Exponents]:
        if d not in self._bases:
            self._bases[d] = self.ring.monomials(d)
        return self._bases[d]

    def _lattice(self, d: int) -> Lattice:
        if d not in self._lattices:
            self._lattices[d] = Lattice(len(self._basis(d)), self.ring.modulus)
        return self._lattices[d]

    def _vector(self, f: Poly, d: int) -> list[int]:
        index = {e: i for i, e in enumerate(self._basis(d))}
        v = [0] * len(index)
        for e, c in f.terms.items():
            v[index[e]] = c
        return v

    def add_generator(self, g: Poly) -> None:
        for d, piece in g.components().items():
            if d > self.max_degree or piece.is_zero():
                continue
            self.generators.append(piece)
            for extra in range(0, self.max_degree - d + 1):
                for mono in self.ring.monomials(extra):
                    prod = piece * Poly(self.ring, {mono: 1})
                    if prod:
                        self._lattice(d + extra).add(self._vector(prod, d + extra))

    def contains(self, f: Poly) -> bool:
        if f.ring != self.ring:
            return False
        for d, piece in f.components().items():
            if d > self.max_degree:
                continue
            if not self._lattice(d).contains(self._vector(piece, d)):
                return False
        return True

    def steenrod_close(self, action) -> None:
        """Add ``P^k(g)`` for every generator until nothing new appears."""
        queue = list(self.generators)
        while queue:
            g = queue.pop()
            image = action(g)
            for d, piece in image.components().items():
                if d <= g.degrees().pop() or d > self.max_degree:
                    continue
                if not self.contains(piece):
                    before = len(self.generators)
                    self.add_generator(piece)
                    queue.extend(self.generators[before:])


@dataclass
class FormalChernModel:
    """Universal Chern ring of top degree ``D`` with the designated ideals.

    ``steenrod_closed`` requires ``m = 1`` and closes both ideals under the
    Steenrod action; over ``Z/p^m`` with ``m > 1`` only the plain ideals exist.
    """

    r: int
    D: int
    p: int
    m: int = 1
    steenrod_closed: bool = True
    ring: PolyRing = field(init=False)
    vanishing: DesignatedIdeal = field(init=False)
    trivial: DesignatedIdeal = field(init=False)

    def __post_init__(self):
        check_prime(self.p)
        if self.r < 1 or self.D < self.r:
            raise PreconditionViolated("need 1 <= r <= D")
        if self.steenrod_closed and self.m != 1:
            raise WrongCoefficients("Steenrod operations need Z/p coefficients")
        self.ring = chern_ring(self.D, self.p**self.m, top_degree=self.D)
        self._steenrod_images = steenrod_on_chern_ring(self.ring, self.p) if self.m == 1 else None
        gens = self.ring.gens()
        self.vanishing = DesignatedIdeal(self.ring, gens[: self.r - 1], self.D)
        self.trivial = DesignatedIdeal(self.ring, gens[: self.r], self.D)
        if self.steenrod_closed:
            self.vanishing.steenrod_close(self.steenrod_total)
            self.trivial.steenrod_close(self.steenrod_total)

    @property
    def u(self) -> Poly:
        return self.ring.gen(self.r - 1)

    def universal_vector(self) -> ChernVector:
        return ChernVector(self.ring, tuple(self.ring.gens()))

    def steenrod_total(self, f: Poly) -> Poly:
        if self._steenrod_images is None:
            raise WrongCoefficients("Steenrod operations need Z/p coefficients")
        return f.substitute(self._steenrod_images, self.ring)

    def steenrod_k(self, f: Poly, k: int) -> Poly:
        out = self.ring.zero()
        step = k * (self.p - 1)
        for d, piece in f.components().items():
            out = out + self.steenrod_total(piece).component(d + step)
        return out

    def equal_mod_vanishing(self, a: Poly, b: Poly) -> bool:
        return self.vanishing.contains(a - b)
