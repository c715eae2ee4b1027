import random

import pytest
from hypothesis import given, settings, strategies as st

from chernkit.checks import adams_deviation_ok, random_formal_vector
from chernkit.chern_ops import (
    AdamsCombination, ChernVector, CoefficientSpec, FormalChernModel, adams_combination, adams_single,
    chern_of_roots, class_in_chern, dim4_identity, express_cd_via_steenrod, lift_class_to_chern, mi_search,
    steenrod_component, steenrod_on_chern_ring, steenrod_total_on_class, steenrod_total_on_roots,
    whitney_product,
)
from chernkit.errors import (
    NotDecomposable, NotInvertible, PreconditionViolated, RingMismatch, WrongCoefficients,
)
from chernkit.modp import PrimePower, binom_mod_p, is_l_power_form
from chernkit.poly import Poly, PolyRing
from chernkit.symfunc import (
    Partition, all_partitions, char_class_in_roots, chern_ring, chern_to_roots, express_in_chern, kappa_formula,
    roots_ring,
)


def xyz(modulus=None):
    R = PolyRing(("x", "y", "z"), (1, 2, 2), modulus)
    return R, R.gens()


# -- Whitney and Adams -------------------------------------------------------------

def test_whitney_unit():
    R, (x, y, z) = xyz()
    b = ChernVector(R, (x, y))
    assert whitney_product(ChernVector.zero(R, 2), b) == b


def test_whitney_square():
    R, (x, _, _) = xyz()
    a = ChernVector(R, (x, R.zero()))
    w = whitney_product(a, a)
    assert (w.c(1), w.c(2)) == (x.scale(2), x**2)
    # truncation at the larger top degree
    assert whitney_product(ChernVector(R, (x,)), ChernVector(R, (x,))).top_degree == 1


def test_whitney_ring_mismatch():
    R, (x, _, _) = xyz()
    S, (u, _, _) = xyz(3)
    with pytest.raises(RingMismatch):
        whitney_product(ChernVector(R, (x,)), ChernVector(S, (u,)))


def test_vector_validation():
    R, (x, y, _) = xyz()
    with pytest.raises(ValueError):
        ChernVector(R, (y,))
    v = ChernVector(R, (x, y))
    assert v.c(0) == 1 and v.c(7) == 0


def test_adams_single_examples():
    R, (x, y, _) = xyz(3)
    v = ChernVector(R, (x, y))
    assert adams_single(v, 1) == v
    assert all(c.is_zero() for c in adams_single(v, 0).classes)
    assert adams_single(v, 2).c(2) == y


def test_adams_combination_examples():
    R, (x, _, z) = xyz(7)
    v = ChernVector(R, (x, z))
    assert adams_combination(v, AdamsCombination((1,), 7)) == v
    w = adams_combination(v, AdamsCombination((1, 1), 7))
    assert (w.c(1), w.c(2)) == (x.scale(2), z.scale(2) + x**2)

    S, (_, y, _) = xyz(3)
    v = ChernVector(S, (S.zero(), y))
    w = adams_combination(v, AdamsCombination((1, 1, 2), 3))
    assert w.c(1).is_zero() and w.c(2).is_zero()


def test_adams_needs_modulus():
    R, (x, _, _) = xyz()
    with pytest.raises(PreconditionViolated):
        adams_combination(ChernVector(R, (x,)), AdamsCombination((1,), 3))


def test_adams_combination_validation():
    with pytest.raises(ValueError):
        AdamsCombination((), 3)
    with pytest.raises(ValueError):
        AdamsCombination((3,), 3)
    with pytest.raises(ValueError):
        AdamsCombination((1,), 3, 0)


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(1, 5), st.sampled_from([None, 7, 9]))
def test_adams_composition(a, b, D, modulus):
    ring = chern_ring(D, modulus, top_degree=D)
    v = ChernVector(ring, tuple(ring.gens()))
    assert adams_single(adams_single(v, a), b) == adams_single(v, a * b)


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.sampled_from([3, 5, 7]), st.integers(1, 6), st.integers(1, 4))
def test_adams_structure_law(seed, p, D, size):
    rng = random.Random(seed)
    ring = chern_ring(D, p, top_degree=D)
    v = random_formal_vector(ring, rng)
    comb = AdamsCombination(tuple(rng.randrange(p) for _ in range(size)), p)
    assert adams_deviation_ok(v, comb) == []


def test_adams_on_line_sum_scales_roots():
    R = roots_ring(3, 11)
    xs = R.gens()
    v = chern_of_roots(xs)
    for m in range(11):
        assert adams_single(v, m) == chern_of_roots([x.scale(m) for x in xs])
        comb = AdamsCombination((1, m % 11), 11)
        assert adams_combination(v, comb) == chern_of_roots(xs + [x.scale(m) for x in xs], 3)


# -- mi-search -----------------------------------------------------------------

def test_mi_search_examples():
    assert mi_search(1, 2, 3) == (1, 1, 2)
    assert mi_search(2, 3, 5) == (1, 1, 2)
    for p in (3, 5, 7, 11):
        with pytest.raises(PreconditionViolated):
            mi_search(1, p, p)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_mi_search_congruences(p):
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
            assert len(set(ms) - {1}) <= 1


# -- lift ------------------------------------------------------------------------

def test_lift_examples():
    C = chern_ring(3, 5, top_degree=3)
    c1, c2, c3 = C.gens()
    spec = CoefficientSpec(PrimePower(5))
    scalar, v = lift_class_to_chern(1, spec, c1)
    assert scalar == 1 and v.c(1) == c1
    scalar, v = lift_class_to_chern(3, spec, c3)
    assert scalar == 3 and v.c(3) == c3 and v.c(1).is_zero() and v.c(2).is_zero()
    with pytest.raises(NotInvertible):
        lift_class_to_chern(6, spec, c3)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1), (5, 3), (7, 2)])
def test_lift_scalar_inverts_factorial(p, m):
    from math import factorial

    q = p**m
    C = chern_ring(p, q, top_degree=p)
    spec = CoefficientSpec(PrimePower(p, m))
    for r in range(1, p + 1):
        scalar, _ = lift_class_to_chern(r, spec, C.gen(r - 1))
        assert scalar * factorial(r - 1) % q == 1


# -- Steenrod --------------------------------------------------------------------

def test_steenrod_first_example():
    # P^1(c_1) for p = 2 is s_(2) = c1^2 - 2 c2 = c1^2 mod 2
    img = steenrod_component(Partition((1,)), 2, 1)
    assert img == {Partition((0, 1)): 1}
    assert str(class_in_chern(img, 2, 2)) == "c1^2"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_steenrod_special_case(p):
    for d in range(1, 26):
        for k in range(1, d // p + 1):
            n = d - k * (p - 1)
            comp = steenrod_component(Partition((n,)), p, k)
            target = Partition.from_dict({1: d - k * p, p: k})
            assert comp == {target: 1}, (d, k)
            assert kappa_formula(target) % p == binom_mod_p(d - k * p + k - 1, k, p)


@pytest.mark.parametrize("r", all_partitions(5), ids=str)
@pytest.mark.parametrize("p", [2, 3])
def test_class_action_matches_root_substitution(r, p):
    L = 4
    via_roots = steenrod_total_on_roots(char_class_in_roots(r, L, p), p)
    R = roots_ring(L, p)
    via_classes = R.zero()
    for nu, c in steenrod_total_on_class(r, p).items():
        if nu.inner_degree <= L:
            via_classes = via_classes + char_class_in_roots(nu, L, p).scale(c)
    assert via_roots == via_classes


@pytest.mark.parametrize("p", [2, 3])
def test_cartan(p):
    R = roots_ring(4, p)
    classes = [char_class_in_roots(r, 4, p) for r in all_partitions(4)]
    for a in classes:
        for b in classes:
            lhs = steenrod_total_on_roots(a * b, p)
            assert lhs == steenrod_total_on_roots(a, p) * steenrod_total_on_roots(b, p)


def test_steenrod_on_roots_needs_mod_p():
    with pytest.raises(WrongCoefficients):
        steenrod_total_on_roots(roots_ring(2).gen(0), 2)


def test_express_cd_examples():
    ident = express_cd_via_steenrod(3, 2)
    assert (ident.k, ident.alpha, ident.source_degree) == (1, 1, 2)
    assert str(ident.decomposable) == "c1*c2"
    assert ident.verify()
    with pytest.raises(NotDecomposable):
        express_cd_via_steenrod(4, 2)
    ident = express_cd_via_steenrod(7, 3)
    assert (ident.k, ident.alpha) == (1, 1)
    assert kappa_formula(Partition.from_dict({1: 4, 3: 1})) == 7


@pytest.mark.parametrize("p", [2, 3, 5])
def test_express_cd_identities_hold(p):
    for d in range(2, 11):
        if is_l_power_form(d, p) is None:
            ident = express_cd_via_steenrod(d, p)
            assert ident.verify(), d
            assert ident.verify(d + 1), d


def test_steenrod_on_chern_ring_matches_roots():
    # images of c_j agree with the root substitution once mapped back to roots
    for p in (2, 3):
        C = chern_ring(4, p)
        images = steenrod_on_chern_ring(C, p)
        R = roots_ring(4, p)
        for j, img in enumerate(images, start=1):
            lhs = chern_to_roots(img, R)
            rhs = steenrod_total_on_roots(char_class_in_roots(Partition((j,)), 4, p), p)
            # degrees above 4 involve classes c_i, i > 4, that the truncated ring drops
            assert lhs.truncate(4) == rhs.truncate(4)


def test_express_chern_of_steenrod_image():
    x = roots_ring(3, 3).gens()
    s = steenrod_total_on_roots(x[0] * x[1] * x[2], 3)
    assert express_in_chern(s).coefficient((0, 0, 1)) == 1


# -- formal model and identities ---------------------------------------------------

def test_formal_model_preconditions():
    with pytest.raises(WrongCoefficients):
        FormalChernModel(2, 3, 3, m=2)
    with pytest.raises(PreconditionViolated):
        FormalChernModel(4, 3, 3)
    FormalChernModel(2, 3, 3, m=2, steenrod_closed=False)


def test_formal_model_ideals():
    M = FormalChernModel(2, 5, 3)
    c = M.ring.gens()
    assert M.vanishing.contains(c[0] * c[2])
    assert not M.vanishing.contains(c[1])
    assert M.trivial.contains(c[1])
    assert M.trivial.contains(M.steenrod_k(c[1], 1))
    assert not M.trivial.contains(c[2])


def test_dim4_identity():
    chk = dim4_identity(2)
    assert chk.identity_holds and chk.shift_is_d4 and chk.lower_unchanged
    assert not dim4_identity(None).identity_holds
