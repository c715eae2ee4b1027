"""Property suites behind ``chernkit verify``.

Each suite returns a list of :class:`Check` records in a fixed order.  Sizes are
chosen so ``verify --suite all`` finishes in well under a minute; the pytest
suite and the acceptance module exercise the larger ranges.
"""

from __future__ import annotations

import random
from itertools import combinations
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .blowup import good_families, main_construction, principal, verify_lem_dva, verify_per_ob
from .chern_ops import (
    AdamsCombination, ChernVector, CoefficientSpec, DesignatedIdeal, FormalChernModel, adams_combination, annihilate_schedule,
    apply_schedule, dim4_identity, express_cd_via_steenrod, mi_search, steenrod_total_on_class,
)
from .errors import PreconditionViolated
from .modp import PrimePower, binom_mod_p, is_l_power_form, multinom_exact, multinom_mod_p, stch_coefficient, stch_decomposable
from .poly import Poly, PolyRing
from .symfunc import (
    Partition, all_partitions, char_class_in_roots, chern_ring, chern_to_roots, evaluate_class, express_in_chern,
    kappa_bruteforce, kappa_formula, roots_ring,
)
from .toychow import (
    ToyChowRing, chern_of_line_sum, is_permutation_matrix, pairing_matrix, steenrod_total_on_ring,
)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _first_failure(items) -> str:
    for item in items:
        return str(item)
    return ""


# ---------------------------------------------------------------- symfunc

def suite_symfunc() -> list[Check]:
    parts = all_partitions(6)
    bad = [str(r) for r in parts if kappa_formula(r) != kappa_bruteforce(r)]
    out = [Check("kappa formula = brute force, |r| <= 6", not bad, _first_failure(bad))]

    bad = []
    for r in all_partitions(5):
        L = r.degree
        s = char_class_in_roots(r, L)
        if chern_to_roots(express_in_chern(s), roots_ring(L)) != s:
            bad.append(str(r))
    out.append(Check("express_in_chern round-trips through roots, |r| <= 5", not bad, _first_failure(bad)))

    bad = []
    for r in all_partitions(6):
        for L in range(1, 4):
            roots = roots_ring(L).gens()
            if evaluate_class(r, roots) != char_class_in_roots(r, L):
                bad.append(f"{r} L={L}")
    out.append(Check("class evaluation on roots matches monomial class", not bad, _first_failure(bad)))
    return out


# ---------------------------------------------------------------- modp

def suite_modp() -> list[Check]:
    bad = []
    for p in (2, 3, 5, 7):
        for top in range(0, 30):
            for a in range(0, top + 1):
                for b in range(0, top - a + 1):
                    if multinom_mod_p(top, [a, b], p) != multinom_exact(top, [a, b]) % p:
                        bad.append(f"p={p} {top};{a},{b}")
    out = [Check("Lucas multinomial residues match exact values", not bad, _first_failure(bad))]

    bad = []
    for p in (2, 3, 5, 7):
        for d in range(1, 121):
            if stch_decomposable(d, p).decomposable == (is_l_power_form(d, p) is not None):
                bad.append(f"d={d} p={p}")
    out.append(Check("decomposability fails exactly at d = l*p^t, d <= 120", not bad, _first_failure(bad)))

    bad = []
    for p in (2, 3, 5):
        for d in range(p, 16):
            for k in range(1, d // p + 1):
                n = d - k * (p - 1)
                via_fraction = Fraction(d, n) * comb(n, k)
                if via_fraction.denominator % p == 0:
                    bad.append(f"d={d} k={k} p={p}: denominator")
                    continue
                r = via_fraction.numerator * pow(via_fraction.denominator, -1, p) % p
                kap = kappa_formula(Partition.from_dict({1: d - k * p, p: k})) % p
                if not r == kap == stch_coefficient(d, k, p) == binom_mod_p(d - k * p + k - 1, k, p):
                    bad.append(f"d={d} k={k} p={p}")
    out.append(Check("Steenrod coefficient chain, d <= 15", not bad, _first_failure(bad)))
    return out


# ---------------------------------------------------------------- chern_ops

def random_formal_vector(ring: PolyRing, rng: random.Random) -> ChernVector:
    """Triangular image of the universal vector: ``c_i -> a_i c_i + (poly in c_1..c_(i-1))``."""
    gens = ring.gens()
    D = len(gens)
    classes = []
    for i in range(1, D + 1):
        f = gens[i - 1].scale(rng.randrange(1, ring.modulus))
        for mono in ring.monomials(i):
            if mono[i - 1] == 0 and rng.random() < 0.4:
                f = f + Poly(ring, {mono: rng.randrange(ring.modulus)})
        classes.append(f)
    return ChernVector(ring, tuple(classes))


def adams_deviation_ok(v: ChernVector, comb_: AdamsCombination) -> list[int]:
    """Degrees where ``c_d(V') - (sum m^d) c_d(V)`` leaves the ideal of lower classes."""
    w = adams_combination(v, comb_)
    failures = []
    for d in range(1, v.top_degree + 1):
        dev = w.c(d) - v.c(d).scale(comb_.power_sum(d) ** comb_.repetitions)
        ideal = DesignatedIdeal(v.ring, [v.c(i) for i in range(1, d)], v.top_degree)
        if not ideal.contains(dev):
            failures.append(d)
    return failures


def suite_chern(seed: int = 0, samples: int = 20) -> list[Check]:
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        p = rng.choice((3, 5, 7))
        D = rng.randrange(2, 6)
        ring = chern_ring(D, p, top_degree=D)
        v = random_formal_vector(ring, rng)
        c = AdamsCombination(tuple(rng.randrange(p) for _ in range(rng.randrange(1, 4))), p)
        fails = adams_deviation_ok(v, c)
        if fails:
            bad.append(f"p={p} D={D} terms={c.terms} degrees={fails}")
    out = [Check(f"Adams deviation lies in the ideal of lower classes ({samples} samples)", not bad,
                 _first_failure(bad))]

    bad = []
    for p in (2, 3):
        for d in range(2, 12):
            if is_l_power_form(d, p) is None and not express_cd_via_steenrod(d, p).verify():
                bad.append(f"d={d} p={p}")
    out.append(Check("Steenrod expressions of c_d hold on roots, d <= 11", not bad, _first_failure(bad)))

    bad = []
    for p in (3, 5, 7):
        for r in range(1, p + 1):
            for d in range(r + 1, 3 * p + 1):
                try:
                    ms = mi_search(r, d, p)
                except PreconditionViolated:
                    if (d - r) % (p - 1):
                        bad.append(f"spurious error r={r} d={d} p={p}")
                    continue
                if sum(pow(m, r, p) for m in ms) % p != 1 or sum(pow(m, d, p) for m in ms) % p:
                    bad.append(f"r={r} d={d} p={p}")
    out.append(Check("Adams multisets satisfy both congruences", not bad, _first_failure(bad)))

    model = FormalChernModel(2, 5, 3)
    _, report = apply_schedule(model.universal_vector(), annihilate_schedule(2, 3, 1, 5), model, strict=False)
    out.append(Check("schedule r=2 p=3 D=5 certifies c3..c5", report.ok, "; ".join(report.lines()) if not report.ok else ""))

    dim4 = dim4_identity(2)
    out.append(Check("dimension-4 identity mod 2", dim4.ok))
    return out


# ---------------------------------------------------------------- blowup

def suite_blowup() -> list[Check]:
    fams = {N: good_families(N) for N in (1, 2, 3)}
    bad = []
    for N, fs in fams.items():
        for U in fs:
            for W in fs:
                res = verify_per_ob(U, W)
                if not res.passed:
                    bad.append(f"{U} / {W}: {res.detail}")
    out = [Check("per-object identity on all pairs of good families, N <= 3", not bad, _first_failure(bad))]

    bad = []
    for N in (1, 2, 3):
        singles = [principal(N, [i]) for i in range(1, N + 1)]
        for k in range(1, N + 1):
            for coll in combinations(singles, k):
                if not verify_lem_dva(list(coll)).passed:
                    bad.append(f"N={N} {[str(f) for f in coll]}")
    out.append(Check("reshuffling identity on principal collections, N <= 3", not bad, _first_failure(bad)))

    bad = []
    for N in (1, 2, 3, 4):
        for cap in [None] + list(range(1, N)):
            if not main_construction(N, cap).ok:
                bad.append(f"N={N} cap={cap}")
    out.append(Check("main construction, N <= 4", not bad, _first_failure(bad)))
    return out


# ---------------------------------------------------------------- toy

TOY_SPECS = ("P1", "P2", "P1xP1", "P2xP1", "P2xP2", "P1xP1xP1", "P2xP1xP1", "P2xP2xP1", "P2xP2xP2")


def toy_crossvalidate(X: ToyChowRing, p: int) -> bool:
    """Ring action on ``c(sum O(h_i))`` against the partition-level action on Chern classes."""
    Xp = X.with_coeffs(CoefficientSpec(PrimePower(p)))
    hs = Xp.gens()
    v = chern_of_line_sum(Xp, hs)
    for d in range(1, v.top_degree + 1):
        cd = Partition.from_dict({1: d})
        via_ring = steenrod_total_on_ring(v.c(d), p)
        via_classes = Xp.ring.zero()
        for nu, coef in steenrod_total_on_class(cd, p).items():
            via_classes = via_classes + evaluate_class(nu, hs).scale(coef)
        if via_ring != via_classes:
            return False
    return True


def suite_toy() -> list[Check]:
    bad = [f"{s} p={p}" for s in TOY_SPECS for p in (2, 3)
           if not toy_crossvalidate(ToyChowRing(tuple(int(t[1:]) for t in s.split("x"))), p)]
    out = [Check("Steenrod ring action matches class-level action", not bad, _first_failure(bad))]
    bad = []
    for s in TOY_SPECS:
        X = ToyChowRing(tuple(int(t[1:]) for t in s.split("x")))
        for r in range(X.dim + 1):
            if not is_permutation_matrix(pairing_matrix(X, r)):
                bad.append(f"{s} r={r}")
    out.append(Check("monomial pairing matrices are permutations", not bad, _first_failure(bad)))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "symfunc": suite_symfunc,
    "modp": suite_modp,
    "chern": suite_chern,
    "blowup": suite_blowup,
    "toy": suite_toy,
}


def run_suites(name: str) -> list[tuple[str, Check]]:
    names = list(SUITES) if name == "all" else [name]
    return [(n, c) for n in names for c in SUITES[n]()]
