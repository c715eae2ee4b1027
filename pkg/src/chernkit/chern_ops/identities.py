"""The mod-2 identity for ``V = U + Lambda^3 U`` with ``U`` of rank three."""

from __future__ import annotations

from dataclasses import dataclass

from ..poly import Poly
from ..symfunc import roots_ring
from .vector import ChernVector, chern_of_roots, whitney_product


@dataclass
class Dim4Check:
    c: ChernVector
    d: Poly
    identity_holds: bool
    shifted: ChernVector
    shift_is_d4: bool
    lower_unchanged: bool

    @property
    def ok(self) -> bool:
        return self.identity_holds and self.shift_is_d4 and self.lower_unchanged


def dim4_identity(modulus: int = 2) -> Dim4Check:
    """Check ``c_4 = c_3 d + c_2 d^2 + d^4`` and the effect of adding ``4 O(d)``.

    ``U`` has roots ``x1, x2, x3``; ``Lambda^3 U`` is the line class ``d = x1+x2+x3``.
    """
    R = roots_ring(3, modulus)
    x = R.gens()
    d = x[0] + x[1] + x[2]
    V = chern_of_roots(x + [d], 4)
    c = V.total()
    identity = c[4] == c[3] * d + c[2] * d**2 + d**4
    line = chern_of_roots([d], 4)
    shifted = V
    for _ in range(4):
        shifted = whitney_product(shifted, line)
    shift_is_d4 = shifted.c(4) - V.c(4) == d**4
    lower_unchanged = all(shifted.c(i) == V.c(i) for i in (1, 2, 3))
    return Dim4Check(V, d, identity, shifted, shift_is_d4, lower_unchanged)
