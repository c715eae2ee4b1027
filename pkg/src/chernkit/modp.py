"""Binomial and multinomial coefficients mod p from base-p digits.

Lucas's theorem gives the residue digit by digit.  Kummer's theorem says the
coefficient is divisible by p exactly when the base-p addition of the parts
carries.  Both facts drive the Steenrod decomposability criterion below.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import NamedTuple

from .errors import IndexOutOfRange, NotPrime, PartsExceedTop

MAX_PRIME = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    if not (isinstance(p, int) and 2 <= p <= MAX_PRIME and is_prime(p)):
        raise NotPrime(f"{p} is not a prime in [2, {MAX_PRIME}]")
    return p


@dataclass(frozen=True)
class PrimePower:
    p: int
    m: int = 1

    def __post_init__(self):
        check_prime(self.p)
        if self.m < 1:
            raise ValueError("exponent m must be positive")

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def __str__(self):
        return f"Z/{self.p}" if self.m == 1 else f"Z/{self.p}^{self.m}"


def digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def multinom_mod_p(top: int, parts: list[int], p: int) -> int:
    """``top! / (prod parts! * (top - sum parts)!)`` reduced mod ``p``."""
    check_prime(p)
    if any(x < 0 for x in parts):
        raise PartsExceedTop("parts must be non-negative")
    rest = top - sum(parts)
    if rest < 0:
        raise PartsExceedTop(f"parts sum to {sum(parts)} > {top}")
    blocks = list(parts) + [rest]
    residue = 1
    t = top
    while t or any(blocks):
        t, td = divmod(t, p)
        ds = []
        for i, b in enumerate(blocks):
            blocks[i], d = divmod(b, p)
            ds.append(d)
        if sum(ds) != td:
            return 0  # a carry in the base-p addition
        term = factorial(td)
        for d in ds:
            term //= factorial(d)
        residue = residue * term % p
    return residue


def binom_mod_p(n: int, k: int, p: int) -> int:
    if k < 0 or n < k:
        return 0
    return multinom_mod_p(n, [k], p)


def carries(a: int, b: int, p: int) -> bool:
    """Whether adding ``a`` and ``b`` in base ``p`` produces a carry."""
    while a or b:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        if da + db >= p:
            return True
    return False


def stch_coefficient(d: int, k: int, p: int) -> int:
    """Top-class coefficient ``binom(d - kp + k - 1, k)`` of ``P^k(c_(d-k(p-1)))``, mod p."""
    check_prime(p)
    if not 1 <= k <= d // p:
        raise IndexOutOfRange(f"k={k} outside [1, {d // p}] for d={d}, p={p}")
    return binom_mod_p(d - k * p + k - 1, k, p)


class Decomposability(NamedTuple):
    decomposable: bool
    witness: int | None


def stch_decomposable(d: int, p: int) -> Decomposability:
    """Least ``k`` whose Steenrod image reaches ``c_d`` with a unit coefficient."""
    check_prime(p)
    if d < 1:
        raise ValueError("degree must be positive")
    for k in range(1, d // p + 1):
        if stch_coefficient(d, k, p):
            return Decomposability(True, k)
    return Decomposability(False, None)


def is_l_power_form(d: int, p: int) -> tuple[int, int] | None:
    """``(l, t)`` with ``d = l * p**t`` and ``1 <= l < p``, if it exists."""
    check_prime(p)
    if d < 1:
        raise ValueError("degree must be positive")
    t = 0
    while d % p == 0:
        d //= p
        t += 1
    return (d, t) if d < p else None


def multinom_exact(top: int, parts: list[int]) -> int:
    rest = top - sum(parts)
    if rest < 0 or any(x < 0 for x in parts):
        raise PartsExceedTop(f"parts {parts} do not fit in {top}")
    out = factorial(top) // factorial(rest)
    for x in parts:
        out //= factorial(x)
    return out


def inverse_mod(a: int, modulus: int) -> int:
    return pow(a, -1, modulus)

