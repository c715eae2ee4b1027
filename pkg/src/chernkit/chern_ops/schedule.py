"""Degree-by-degree annihilation of Chern classes above a fixed ``c_r = u``.

For each degree ``d`` in ``(r, D]`` the schedule picks one move:

* ``steenrod``: ``d`` is not ``l * p^t``, so ``c_d`` is a combination of
  products of lower classes and Steenrod images of lower classes.  This is a
  certificate, not a transformation.
* ``adams``: ``d - r`` is not a multiple of ``p - 1``; a combination of Adams
  operations with ``sum m^r = 1`` and ``sum m^d = 0`` mod ``p`` kills the
  ``c_d`` coefficient and keeps ``c_r``.  Over ``Z/p^m`` it is applied
  ``p^(m-1)`` times, which turns both congruences into congruences mod ``p^m``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Literal

from ..errors import CertificateFailure, PreconditionViolated, RangeExceeded, RingMismatch
from ..modp import check_prime, is_l_power_form, stch_decomposable
from .formal import FormalChernModel
from .steenrod import SteenrodIdentity, express_cd_via_steenrod
from .vector import AdamsCombination, ChernVector, adams_combination

log = logging.getLogger(__name__)

Mode = Literal["full", "adamsOnly"]


def mi_search(r: int, d: int, p: int) -> tuple[int, ...]:
    """Residues ``m_i`` with ``sum m_i^r = 1`` and ``sum m_i^d = 0`` mod ``p``.

    Copies of ``1`` and of one witness ``m`` suffice; candidates are tried by
    increasing size, then by ``m``, then by the number of copies of ``m``.
    """
    check_prime(p)
    if r < 1 or d < 1:
        raise ValueError("degrees must be positive")
    if (d - r) % (p - 1) == 0:
        raise PreconditionViolated(f"d - r = {d - r} is divisible by p - 1 = {p - 1}")
    for size in range(1, 2 * (p - 1) + 1):
        for m in range(2, p):
            for b in range(1, size + 1):
                a = size - b
                if (a + b * pow(m, r, p)) % p == 1 and (a + b * pow(m, d, p)) % p == 0:
                    return (1,) * a + (m,) * b
    found = _exhaustive_mi(r, d, p)
    assert found is None, "two-value search missed a solution"
    raise AssertionError(f"no collection for r={r}, d={d}, p={p}")


def _exhaustive_mi(r: int, d: int, p: int):
    for size in range(1, 2 * (p - 1) + 1):
        for combo in combinations_with_replacement(range(1, p), size):
            if sum(pow(m, r, p) for m in combo) % p == 1 and sum(pow(m, d, p) for m in combo) % p == 0:
                return combo
    return None


@dataclass(frozen=True)
class AdamsMove:
    degree: int
    combination: AdamsCombination
    kind: str = "adams"


@dataclass(frozen=True)
class SteenrodMove:
    """Certifying move; the identity itself is built on first use (it has ~p(d) terms)."""

    degree: int
    p: int
    k: int
    kind: str = "steenrod"

    def __post_init__(self):
        dec = stch_decomposable(self.degree, self.p)
        if not dec.decomposable or dec.witness != self.k:
            raise ValueError(f"k={self.k} is not the least Steenrod witness for d={self.degree}, p={self.p}")

    @property
    def identity(self) -> SteenrodIdentity:
        return express_cd_via_steenrod(self.degree, self.p)


@dataclass(frozen=True)
class NoOp:
    degree: int
    reason: str
    kind: str = "noop"


Move = AdamsMove | SteenrodMove | NoOp


@dataclass(frozen=True)
class Schedule:
    r: int
    p: int
    m: int
    D: int
    mode: Mode
    moves: tuple[Move, ...] = field(default_factory=tuple)

    def __post_init__(self):
        degrees = [mv.degree for mv in self.moves]
        if degrees != list(range(self.r + 1, self.D + 1)):
            raise ValueError(f"moves must cover degrees {self.r + 1}..{self.D} once, in order")


def annihilate_schedule(r: int, p: int, m: int, D: int, mode: Mode = "full") -> Schedule:
    check_prime(p)
    if r < 1 or m < 1:
        raise ValueError("r and m must be positive")
    if mode == "full":
        if m != 1:
            raise PreconditionViolated("full mode uses Steenrod operations, which need m = 1")
        if D >= r * p:
            raise RangeExceeded(f"full mode needs D < r*p = {r * p}, got D = {D}")
    elif mode == "adamsOnly":
        if D >= r + p - 1:
            raise RangeExceeded(f"Adams-only mode needs D < r + p - 1 = {r + p - 1}, got D = {D}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    reps = p ** (m - 1)
    moves: list[Move] = []
    for d in range(r + 1, D + 1):
        if mode == "full" and is_l_power_form(d, p) is None:
            moves.append(SteenrodMove(d, p, stch_decomposable(d, p).witness))
        elif (d - r) % (p - 1):
            moves.append(AdamsMove(d, AdamsCombination(mi_search(r, d, p), p, reps)))
        else:
            raise RangeExceeded(f"degree {d}: d/r is a power of p and d - r is a multiple of p - 1")
    return Schedule(r, p, m, D, mode, tuple(moves))


@dataclass
class DegreeCheck:
    degree: int
    kind: str
    in_ideal: bool
    identity_holds: bool | None = None
    note: str = ""


@dataclass
class ScheduleReport:
    checks: list[DegreeCheck]
    lower_vanish: bool
    cr_preserved: bool

    @property
    def ok(self) -> bool:
        return (
            self.lower_vanish and self.cr_preserved
            and all(c.in_ideal and c.identity_holds is not False for c in self.checks)
        )

    def lines(self) -> list[str]:
        out = [f"c_i = 0 for i < r: {'yes' if self.lower_vanish else 'NO'}"]
        for c in self.checks:
            extra = "" if c.identity_holds is None else f", identity {'holds' if c.identity_holds else 'FAILS'}"
            out.append(f"d={c.degree} [{c.kind}] numerically trivial: {'yes' if c.in_ideal else 'NO'}{extra}")
        out.append(f"c_r preserved: {'yes' if self.cr_preserved else 'NO'}")
        return out


def apply_schedule(v: ChernVector, schedule: Schedule, model: FormalChernModel,
                   *, strict: bool = True) -> tuple[ChernVector, ScheduleReport]:
    """Run the moves on ``v`` and certify the result inside ``model``.

    ``model.trivial`` plays the numerically trivial ideal and ``model.vanishing``
    the zero ideal; ``c_r(v)`` is taken as ``u``.  With ``strict`` a failed
    check raises :class:`CertificateFailure`.
    """
    s = schedule
    if v.ring != model.ring:
        raise RingMismatch("vector and model live in different rings")
    if (model.r, model.p, model.m) != (s.r, s.p, s.m):
        raise PreconditionViolated("model and schedule disagree on r, p or m")
    if v.top_degree < s.D:
        v = ChernVector(v.ring, v.classes + (v.ring.zero(),) * (s.D - v.top_degree))
    u = v.c(s.r)
    lower_vanish = all(model.vanishing.contains(v.c(i)) for i in range(1, s.r))
    checks: list[DegreeCheck] = []
    for move in s.moves:
        d = move.degree
        identity_holds = None
        if isinstance(move, AdamsMove):
            v = adams_combination(v, move.combination)
        elif isinstance(move, SteenrodMove):
            rhs = move.identity.apply(v.total(), model.steenrod_k)
            identity_holds = model.equal_mod_vanishing(v.c(d), rhs)
        # every class up to d must now be numerically trivial
        in_ideal = all(model.trivial.contains(v.c(i)) for i in range(1, d + 1))
        checks.append(DegreeCheck(d, move.kind, in_ideal, identity_holds))
        log.debug("degree %d (%s): trivial=%s", d, move.kind, in_ideal)
    cr_preserved = model.equal_mod_vanishing(v.c(s.r), u)
    report = ScheduleReport(checks, lower_vanish, cr_preserved)
    if strict and not report.ok:
        raise CertificateFailure("; ".join(line for line in report.lines() if "NO" in line or "FAILS" in line))
    return v, report
