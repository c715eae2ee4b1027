"""Acceptance criteria 1-10.

Each test wraps its body in ``acceptance.criterion`` so the terminal summary
prints one PASS/FAIL line per criterion.
"""
import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from chernkit.blowup import good_families, main_construction, principal, verify_lem_dva, verify_per_ob
from chernkit.checks import TOY_SPECS, adams_deviation_ok, random_formal_vector, toy_crossvalidate
from chernkit.chern_ops import (
    AdamsCombination, ChernVector, FormalChernModel, annihilate_schedule, apply_schedule, dim4_identity, mi_search,
    steenrod_component,
)
from chernkit.errors import PreconditionViolated, RangeExceeded
from chernkit.modp import stch_coefficient, stch_decomposable
from chernkit.symfunc import Partition, all_partitions, chern_ring, kappa_bruteforce, kappa_formula
from chernkit.toychow import is_permutation_matrix, pairing_matrix, parse_ring


def test_criterion_01_kappa_equivalence(acceptance):
    with acceptance.criterion(1, "kappa formula equals brute force on all 66 partitions of weight <= 8", 10):
        parts = [r for r in all_partitions(8) if r.inner_degree > 0]
        assert len(parts) == 66
        mismatches = [str(r) for r in parts if kappa_formula(r) != kappa_bruteforce(r)]
        assert mismatches == []


def test_criterion_02_steenrod_coefficient_chain(acceptance):
    with acceptance.criterion(2, "three routes to the Steenrod top coefficient agree", 30):
        for p in (2, 3, 5):
            for d in range(1, 26):
                for k in range(1, d // p + 1):
                    n = d - k * (p - 1)
                    target = Partition.from_dict({1: d - k * p, p: k})
                    via_kappa = kappa_formula(target) % p
                    ratio = Fraction(d, n) * comb(n, k)
                    assert ratio.denominator == 1
                    via_ratio = ratio.numerator % p
                    via_binom = stch_coefficient(d, k, p)
                    assert via_kappa == via_ratio == via_binom, (p, d, k)
                    assert steenrod_component(Partition((n,)), p, k) == {target: 1}


def test_criterion_03_dichotomy(acceptance):
    with acceptance.criterion(3, "indecomposable degrees are exactly l*p^t with 1 <= l < p, d <= 300"):
        for p in (2, 3, 5, 7):
            special = {l * p**t for l in range(1, p) for t in range(0, 10) if l * p**t <= 300}
            for d in range(1, 301):
                assert stch_decomposable(d, p).decomposable == (d not in special), (p, d)


def test_criterion_04_mi_search(acceptance):
    with acceptance.criterion(4, "mi-search congruences, size bound and error condition"):
        for p in (3, 5, 7, 11, 13):
            for r in range(1, p + 1):
                for d in range(r + 1, 3 * p + 1):
                    if (d - r) % (p - 1) == 0:
                        with pytest.raises(PreconditionViolated):
                            mi_search(r, d, p)
                        continue
                    ms = mi_search(r, d, p)
                    assert sum(pow(m, r, p) for m in ms) % p == 1
                    assert sum(pow(m, d, p) for m in ms) % p == 0
                    assert len(ms) <= 2 * (p - 1)


def test_criterion_05_adams_structure_law(acceptance):
    with acceptance.criterion(5, "Adams deviation lies in the ideal of lower classes (120 samples)"):
        rng = random.Random(20261015)
        for _ in range(120):
            p = rng.choice((2, 3, 5, 7))
            D = rng.randrange(1, 7)
            ring = chern_ring(D, p, top_degree=D)
            v = random_formal_vector(ring, rng)
            comb_ = AdamsCombination(tuple(rng.randrange(p) for _ in range(rng.randrange(1, 5))), p)
            assert adams_deviation_ok(v, comb_) == [], (p, D, comb_.terms)


def test_criterion_06_blowup(acceptance):
    with acceptance.criterion(6, "blow-up identities on good families and the main construction", 120):
        for N in (1, 2, 3):
            fams = good_families(N)
            for U in fams:
                for W in fams:
                    assert verify_per_ob(U, W).passed
        rng = random.Random(4)
        fams4 = good_families(4)
        for _ in range(200):
            assert verify_per_ob(rng.choice(fams4), rng.choice(fams4)).passed
        for N in (1, 2, 3, 4):
            singles = [principal(N, [i]) for i in range(1, N + 1)]
            for k in range(1, N + 1):
                for coll in combinations(singles, k):
                    assert verify_lem_dva(list(coll)).passed
            for cap in [None] + list(range(1, N)):
                mc = main_construction(N, cap)
                assert mc.chern_equal and mc.cap_vanishing
                if cap is not None:
                    assert all(mc.b[j - 1].is_zero() for j in range(cap + 1, N + 1))


def test_criterion_07_schedule_end_to_end(acceptance):
    with acceptance.criterion(7, "r=2, p=3, D=5 schedule certifies c3..c5 and keeps c2 = u; D=6 rejected"):
        M = FormalChernModel(2, 5, 3)
        gens = M.ring.gens()
        v = ChernVector(M.ring, (M.ring.zero(),) + tuple(gens[1:]))
        assert v.c(2) == M.u
        w, report = apply_schedule(v, annihilate_schedule(2, 3, 1, 5), M)
        assert report.ok
        assert [c.degree for c in report.checks] == [3, 4, 5]
        assert all(M.trivial.contains(w.c(d)) for d in (3, 4, 5))
        assert w.c(2) == M.u
        with pytest.raises(RangeExceeded):
            annihilate_schedule(2, 3, 1, 6)


def test_criterion_08_prime_power(acceptance):
    with acceptance.criterion(8, "Z/p^m Adams-only runs for (3,2) and (5,2)"):
        for p, m in ((3, 2), (5, 2)):
            check_prime_power_runs(p, m)


def check_prime_power_runs(p, m):
    q, r = p**m, 2
    for D in range(r + 1, r + p - 1):
        s = annihilate_schedule(r, p, m, D, "adamsOnly")
        for mv in s.moves:
            comb_ = mv.combination
            assert comb_.repetitions == p ** (m - 1)
            assert comb_.power_sum(r) % p == 1 and comb_.power_sum(mv.degree) % p == 0
            # unit-group route: (1 + p*k)^(p^(m-1)) = 1 and (p*k)^(p^(m-1)) = 0 mod p^m
            assert pow(comb_.power_sum(r), comb_.repetitions, q) == 1
            assert pow(comb_.power_sum(mv.degree), comb_.repetitions, q) == 0
        M = FormalChernModel(r, D, p, m=m, steenrod_closed=False)
        gens = M.ring.gens()
        v = ChernVector(M.ring, (M.ring.zero(),) + tuple(gens[1:]))
        w, report = apply_schedule(v, s, M)
        assert report.ok and w.c(2) == M.u, (p, m, D)
        for d in range(r + 1, D + 1):
            exps = tuple(1 if i == d - 1 else 0 for i in range(D))
            assert w.c(d).coefficient(exps) == 0, (p, m, D, d)


def test_criterion_09_dim4(acceptance):
    with acceptance.criterion(9, "c4(U + det U) identity mod 2 and the shift by four d-lines"):
        chk = dim4_identity(2)
        assert chk.identity_holds and chk.shift_is_d4 and chk.lower_unchanged


def test_criterion_10_toy_rings(acceptance):
    with acceptance.criterion(10, "toy-ring Steenrod cross-validation and pairing perfection"):
        for spec in TOY_SPECS:
            for p in (2, 3):
                assert toy_crossvalidate(parse_ring(spec), p), (spec, p)
                X = parse_ring(spec, p)
                for k in range(X.dim + 1):
                    assert is_permutation_matrix(pairing_matrix(X, k))
            X = parse_ring(spec)
            for k in range(X.dim + 1):
                assert is_permutation_matrix(pairing_matrix(X, k))
