"""The total Steenrod operation on partition-indexed classes.

The operation substitutes ``x -> x + x^p`` in every Chern root.  Applied to the
class of a partition ``mu`` (the monomial symmetric function ``m_mu``), each part
``e`` sitting on its own root expands as ``sum_j binom(e, j) x^(e + j(p-1))``.
Only the number of roots carrying a positive exponent matters, so the image
is computed in ``len(mu)`` roots; more roots cannot change the coefficients.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from ..errors import NotDecomposable, WrongCoefficients
from ..modp import check_prime, stch_coefficient, stch_decomposable
from ..poly import Poly, PolyRing
from ..symfunc import (
    Partition, chern_to_roots, elementary_in_roots, express_monomial_basis, roots_ring,
)


@lru_cache(maxsize=None)
def _total_image(parts: tuple[int, ...], p: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    counts = Counter(parts)
    values = sorted(counts, reverse=True)
    acc: dict[tuple[int, ...], int] = {}
    step = p - 1
    nu: list[int] = []

    # walk positions left to right; keep the image exponents non-increasing so
    # every monomial symmetric function is hit through its sorted representative
    def rec(weight: int):
        if len(nu) == len(parts):
            key = tuple(nu)
            acc[key] = acc.get(key, 0) + weight
            return
        bound = nu[-1] if nu else None
        for e in values:
            if not counts[e]:
                continue
            counts[e] -= 1
            for j in range(e + 1):
                x = e + j * step
                if bound is not None and x > bound:
                    break
                nu.append(x)
                rec(weight * comb(e, j))
                nu.pop()
            counts[e] += 1

    rec(1)
    return tuple(sorted((k, v % p) for k, v in acc.items() if v % p))


def steenrod_total_on_class(r: Partition, p: int) -> dict[Partition, int]:
    """``P^Tot`` of the class indexed by ``r``, in the partition basis mod ``p``."""
    check_prime(p)
    return {Partition.from_parts(nu): c for nu, c in _total_image(r.parts, p)}


def steenrod_component(r: Partition, p: int, k: int) -> dict[Partition, int]:
    """``P^k`` of the class of ``r``: the degree ``||r|| + k(p-1)`` part of the total image."""
    target = r.degree + k * (p - 1)
    return {nu: c for nu, c in steenrod_total_on_class(r, p).items() if nu.degree == target}


def steenrod_total_on_roots(f: Poly, p: int) -> Poly:
    """Substitute ``x_i -> x_i + x_i^p`` in a root-regime polynomial mod ``p``."""
    ring = f.ring
    if ring.modulus != p:
        raise WrongCoefficients(f"Steenrod operations need Z/{p} coefficients, got modulus {ring.modulus}")
    gens = ring.gens()
    return f.substitute([x + x**p for x in gens], ring)


def class_in_chern(coeffs: dict[Partition, int], L: int, modulus: int | None) -> Poly:
    """Chern-class expression of ``sum coeffs[nu] * s_nu`` with ``L`` roots."""
    return express_monomial_basis({nu.parts: c for nu, c in coeffs.items()}, L, modulus)


@dataclass(frozen=True)
class SteenrodIdentity:
    """``c_d = alpha^-1 * (P^k(c_n) - decomposable)`` mod ``p``, with ``n = d - k(p-1)``.

    ``expansion`` is the Chern expression of ``s_(1^(d-kp), p^k)``, whose
    ``c_d`` coefficient is ``alpha``; ``decomposable`` is the rest.
    """

    d: int
    p: int
    k: int
    alpha: int
    alpha_inv: int
    target: Partition
    expansion: Poly
    decomposable: Poly

    @property
    def source_degree(self) -> int:
        return self.d - self.k * (self.p - 1)

    def verify(self, L: int | None = None) -> bool:
        """Check the identity on the elementary symmetric polynomials in ``L >= d`` roots."""
        L = self.d if L is None else L
        if L < self.d:
            raise ValueError("need at least d roots")
        R = roots_ring(L, self.p)
        pk = steenrod_total_on_roots(elementary_in_roots(R, self.source_degree), self.p).component(self.d)
        dec = chern_to_roots(self.decomposable, R)
        lhs = elementary_in_roots(R, self.d)
        return lhs == (pk - dec).scale(self.alpha_inv)

    def apply(self, classes: list[Poly], steenrod_k) -> Poly:
        """Evaluate the right-hand side on concrete classes ``c_0..c_(d-1)``.

        ``steenrod_k(x, k)`` must return ``P^k(x)`` in the ring of ``classes``.
        """
        ring = classes[0].ring
        dec = self.decomposable.substitute(
            [classes[i] if i < len(classes) else ring.zero() for i in range(1, self.decomposable.ring.nvars + 1)],
            ring,
        )
        return (steenrod_k(classes[self.source_degree], self.k) - dec).scale(self.alpha_inv)


@lru_cache(maxsize=None)
def express_cd_via_steenrod(d: int, p: int) -> SteenrodIdentity:
    check_prime(p)
    dec = stch_decomposable(d, p)
    if not dec.decomposable:
        raise NotDecomposable(f"d={d} has the form l*p^t for p={p}")
    k = dec.witness
    alpha = stch_coefficient(d, k, p)
    target = Partition.from_dict({1: d - k * p, p: k})
    # the partition (1^(d-kp), p^k) has d - k(p-1) parts, so d roots suffice
    expansion = class_in_chern({target: 1}, d, p)
    top = [0] * d
    top[d - 1] = 1
    assert expansion.coefficient(tuple(top)) == alpha
    decomposable = expansion - expansion.ring.gen(d - 1).scale(alpha)
    return SteenrodIdentity(d, p, k, alpha, pow(alpha, -1, p), target, expansion, decomposable)


def steenrod_on_chern_ring(ring: PolyRing, p: int) -> list[Poly]:
    """Images ``P^Tot(c_j)`` of the generators of a (truncated) Chern ring mod ``p``."""
    L = ring.nvars
    top = ring.top_degree if ring.top_degree is not None else None
    images = []
    for j in range(1, L + 1):
        coeffs = steenrod_total_on_class(Partition.from_parts([1] * j), p)
        if top is not None:
            coeffs = {nu: c for nu, c in coeffs.items() if nu.degree <= top}
        # the Chern expression of s_nu stabilises once there are |nu| roots
        L_eff = max([L] + [nu.degree for nu in coeffs])
        expr = class_in_chern(coeffs, L_eff, p)
        # c_i with i > L vanish in the target ring
        imgs = [ring.gen(i) if i < L else ring.zero() for i in range(L_eff)]
        images.append(expr.substitute(imgs, ring))
    return images

