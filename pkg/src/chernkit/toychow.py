"""Chow rings of products of projective spaces, ``Z[h_1..h_f] / (h_i^(n_i + 1))``.

These have a monomial basis, a perfect degree pairing and an explicit
Steenrod action, which is all the end-to-end checks need.  Classes are plain
:class:`~chernkit.poly.Poly` objects over the ring returned by :func:`toy_ring`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .chern_ops.vector import ChernVector, CoefficientSpec
from .errors import DegreeMismatch, ParseError, WrongCoefficients
from .modp import PrimePower, is_prime
from .poly import Exponents, Poly, PolyRing, elementary_all

DEFAULT_PADIC_DEPTH = 4


@dataclass(frozen=True)
class ToyChowRing:
    factors: tuple[int, ...]
    coeffs: CoefficientSpec = CoefficientSpec()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors or any(n < 1 for n in self.factors):
            raise ValueError("factors must be positive dimensions")

    @property
    def ring(self) -> PolyRing:
        f = len(self.factors)
        return PolyRing(
            tuple(f"h{i}" for i in range(1, f + 1)), (1,) * f, self.coeffs.modulus,
            caps=self.factors, kind="toy",
        )

    @property
    def dim(self) -> int:
        return sum(self.factors)

    @property
    def top_monomial(self) -> Exponents:
        return self.factors

    def gens(self) -> list[Poly]:
        return self.ring.gens()

    def basis(self, degree: int) -> list[Exponents]:
        return self.ring.monomials(degree)

    def parse(self, text: str) -> Poly:
        return self.ring.parse(text)

    def with_coeffs(self, coeffs: CoefficientSpec) -> ToyChowRing:
        return ToyChowRing(self.factors, coeffs)

    def __str__(self):
        return "x".join(f"P{n}" for n in self.factors) + f" over {self.coeffs}"


def parse_ring(spec: str, p: int | None = None, m: int = 1) -> ToyChowRing:
    """``"P2xP1xP1"`` with optional ``Z/p^m`` coefficients."""
    pieces = spec.strip().split("x")
    if not all(re.fullmatch(r"P\d+", s) for s in pieces):
        raise ParseError(f"bad ring descriptor {spec!r}; expected e.g. 'P2xP1xP1'")
    coeffs = CoefficientSpec(PrimePower(p, m)) if p is not None else CoefficientSpec()
    return ToyChowRing(tuple(int(s[1:]) for s in pieces), coeffs)


def ring_of(a: Poly) -> ToyChowRing:
    if a.ring.kind != "toy":
        raise TypeError("not a toy Chow class")
    return ToyChowRing(tuple(a.ring.caps), CoefficientSpec.of(a.ring))


def degree_pairing(a: Poly, b: Poly, r: int) -> int:
    """Coefficient of the point class ``prod h_i^(n_i)`` in ``a * b``."""
    X = ring_of(a)
    if not a.is_homogeneous(r) or not b.is_homogeneous(X.dim - r):
        raise DegreeMismatch(f"need degrees {r} and {X.dim - r} on a {X.dim}-dimensional ring")
    return (a * b).coefficient(X.top_monomial)


def is_num_trivial(a: Poly) -> bool:
    X = ring_of(a)
    degs = a.degrees()
    if len(degs) > 1:
        raise DegreeMismatch("class is not homogeneous")
    if not degs:
        return True
    r = degs.pop()
    for mono in X.basis(X.dim - r):
        if degree_pairing(a, Poly(a.ring, {mono: 1}), r):
            return False
    return True


def pairing_matrix(X: ToyChowRing, r: int) -> list[list[int]]:
    left, right = X.basis(r), X.basis(X.dim - r)
    R = X.ring
    return [[degree_pairing(Poly(R, {a: 1}), Poly(R, {b: 1}), r) for b in right] for a in left]


def is_permutation_matrix(M: list[list[int]]) -> bool:
    if any(len(row) != len(M) for row in M):
        return False
    cols = list(zip(*M)) if M else []
    return all(sorted(row) == [0] * (len(row) - 1) + [1] for row in M) and all(
        sorted(col) == [0] * (len(col) - 1) + [1] for col in cols
    )


def steenrod_total_on_ring(a: Poly, p: int) -> Poly:
    """Ring morphism ``h_i -> h_i + h_i^p`` with ``Z/p`` coefficients."""
    if a.ring.modulus != p or not is_prime(p):
        raise WrongCoefficients(f"Steenrod operations need Z/{p} coefficients, got modulus {a.ring.modulus}")
    return a.substitute([h + h**p for h in a.ring.gens()], a.ring)


def chern_of_line_sum(X: ToyChowRing | PolyRing, divisors: list[Poly]) -> ChernVector:
    """Chern vector of ``sum O(a_i)``, truncated at ``min(N, dim)``."""
    ring = X.ring if isinstance(X, ToyChowRing) else X
    for a in divisors:
        if a.ring != ring:
            raise WrongCoefficients("divisor class from another ring")
        if not a.is_homogeneous(1):
            raise DegreeMismatch("line classes must be homogeneous of degree 1")
    dim = sum(ring.caps)
    D = min(len(divisors), dim)
    e = elementary_all(divisors, D, ring)
    return ChernVector(ring, tuple(e[1:D + 1]))


def num_trivial_padic(a: Poly, p: int, M: int = DEFAULT_PADIC_DEPTH) -> list[bool]:
    """Verdicts of :func:`is_num_trivial` after reduction mod ``p^m``, ``m = 1..M``."""
    X = ring_of(a)
    if a.ring.modulus is not None:
        raise WrongCoefficients("p-adic checks start from integral classes")
    out = []
    for m in range(1, M + 1):
        Xm = X.with_coeffs(CoefficientSpec(PrimePower(p, m)))
        out.append(is_num_trivial(a.change_ring(Xm.ring)))
    return out
