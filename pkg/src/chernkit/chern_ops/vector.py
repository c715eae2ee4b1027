"""Total Chern classes as graded vectors, with Whitney sums and Adams operations."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from ..errors import NotInvertible, PreconditionViolated, RingMismatch
from ..modp import PrimePower
from ..poly import Poly, PolyRing, elementary_all


@dataclass(frozen=True)
class CoefficientSpec:
    """Exact integers (``prime_power=None``) or ``Z/p^m``."""

    prime_power: PrimePower | None = None

    @property
    def modulus(self) -> int | None:
        return None if self.prime_power is None else self.prime_power.modulus

    @property
    def p(self) -> int | None:
        return None if self.prime_power is None else self.prime_power.p

    @classmethod
    def of(cls, ring: PolyRing) -> CoefficientSpec:
        """Coefficients read off a ring modulus, which must be a prime power."""
        if ring.modulus is None:
            return cls()
        n = ring.modulus
        p = 2
        while n % p:
            p += 1
        m = 0
        while n % p == 0:
            n //= p
            m += 1
        if n != 1:
            raise PreconditionViolated(f"modulus {ring.modulus} is not a prime power")
        return cls(PrimePower(p, m))

    def __str__(self):
        return "Z" if self.prime_power is None else f"Z/{self.prime_power.modulus}"


@dataclass(frozen=True)
class ChernVector:
    """``(c_1, ..., c_D)`` in a graded ring; classes past ``D`` are zero."""

    ring: PolyRing
    classes: tuple[Poly, ...]

    def __post_init__(self):
        classes = tuple(self.classes)
        object.__setattr__(self, "classes", classes)
        for d, c in enumerate(classes, start=1):
            if c.ring != self.ring:
                raise RingMismatch(f"c_{d} lives in a different ring")
            if not c.is_homogeneous(d):
                raise ValueError(f"c_{d} is not homogeneous of degree {d}: {c}")

    @classmethod
    def zero(cls, ring: PolyRing, D: int) -> ChernVector:
        return cls(ring, (ring.zero(),) * D)

    @property
    def top_degree(self) -> int:
        return len(self.classes)

    @property
    def coeffs(self) -> CoefficientSpec:
        return CoefficientSpec.of(self.ring)

    def c(self, d: int) -> Poly:
        if d == 0:
            return self.ring.one()
        if 1 <= d <= len(self.classes):
            return self.classes[d - 1]
        return self.ring.zero()

    def total(self) -> list[Poly]:
        return [self.c(d) for d in range(self.top_degree + 1)]

    def replace(self, d: int, value: Poly) -> ChernVector:
        classes = list(self.classes)
        classes[d - 1] = value
        return ChernVector(self.ring, tuple(classes))

    def truncate(self, D: int) -> ChernVector:
        return ChernVector(self.ring, tuple(self.c(d) for d in range(1, D + 1)))

    def __str__(self):
        return "; ".join(f"c{d} = {c}" for d, c in enumerate(self.classes, start=1))


def whitney_product(a: ChernVector, b: ChernVector) -> ChernVector:
    if a.ring != b.ring:
        raise RingMismatch("Whitney product of vectors over different rings")
    D = max(a.top_degree, b.top_degree)
    classes = []
    for d in range(1, D + 1):
        acc = a.ring.zero()
        for i in range(d + 1):
            ai, bj = a.c(i), b.c(d - i)
            if ai and bj:
                acc = acc + ai * bj
        classes.append(acc)
    return ChernVector(a.ring, tuple(classes))


def adams_single(v: ChernVector, mult: int) -> ChernVector:
    """``Psi_m`` scales the roots by ``m``, hence ``c_k`` by ``m**k``."""
    return ChernVector(v.ring, tuple(c.scale(mult**k) for k, c in enumerate(v.classes, start=1)))


@dataclass(frozen=True)
class AdamsCombination:
    """``sum_i Psi_(m_i)``, applied ``repetitions`` times in a row."""

    terms: tuple[int, ...]
    p: int
    repetitions: int = 1

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(sorted(self.terms)))
        if not self.terms:
            raise ValueError("an Adams combination needs at least one term")
        if any(not 0 <= m < self.p for m in self.terms):
            raise ValueError(f"terms must be residues in [0, {self.p})")
        if self.repetitions < 1:
            raise ValueError("repetitions must be positive")

    def power_sum(self, d: int, modulus: int | None = None) -> int:
        s = sum(m**d for m in self.terms)
        return s if modulus is None else s % modulus


def adams_combination(v: ChernVector, comb: AdamsCombination) -> ChernVector:
    if v.ring.modulus is None:
        raise PreconditionViolated("Adams combinations are applied with modular coefficients")
    for _ in range(comb.repetitions):
        out = ChernVector.zero(v.ring, v.top_degree)
        for m in comb.terms:
            out = whitney_product(out, adams_single(v, m))
        v = out
    return v


def chern_of_roots(roots: list[Poly], D: int | None = None) -> ChernVector:
    """Chern vector of a sum of line classes with the given first Chern classes."""
    if not roots:
        raise ValueError("need at least one root")
    ring = roots[0].ring
    if D is None:
        D = len(roots)
    e = elementary_all(roots, D, ring)
    return ChernVector(ring, tuple(e[1:D + 1]))


def lift_class_to_chern(r: int, coeffs: CoefficientSpec, u: Poly, top_degree: int | None = None
                        ) -> tuple[int, ChernVector]:
    """Inverse of ``(r-1)!`` and the vector ``(0, ..., 0, u)``.

    A codimension-``r`` cycle ``Z`` has ``c_r(O_Z) = (r-1)! [Z]`` with lower
    classes zero, so ``u`` is reached once ``(r-1)!`` is a unit, i.e. ``r <= p``.
    """
    pp = coeffs.prime_power
    if pp is None:
        raise PreconditionViolated("lifting needs Z/p^m coefficients")
    if r < 1:
        raise ValueError("codimension must be positive")
    if r > pp.p:
        raise NotInvertible(f"({r}-1)! is divisible by p={pp.p}")
    if u.ring.modulus != pp.modulus:
        raise RingMismatch(f"class has modulus {u.ring.modulus}, expected {pp.modulus}")
    if not u.is_homogeneous(r):
        raise ValueError(f"u must be homogeneous of degree {r}")
    scalar = pow(factorial(r - 1), -1, pp.modulus)
    D = r if top_degree is None else top_degree
    if D < r:
        raise ValueError("top degree below r")
    classes = [u.ring.zero()] * D
    classes[r - 1] = u
    return scalar, ChernVector(u.ring, tuple(classes))
