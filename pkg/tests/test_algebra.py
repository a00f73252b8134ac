"""Tests for the algebra core: normal ordering, defining relations, closed
forms, and the Hopf operations.

The normal-ordering engine (rewrite tables) is validated three independent
ways: the defining relations themselves, associativity on random triples,
and agreement with the explicit q-binomial commutator formula, which is
derived without the engine.
"""

import random

import pytest

from qpair.algebra import Algebra, PBWMonomial
from qpair.cyclo import Params

A23 = Algebra.for_pair(2, 3)


def test_basis_enumeration_counts():
    assert sum(1 for _ in A23.basis_monomials()) == 432
    assert A23.dimension == 432
    A25 = Algebra.for_pair(2, 5)
    assert sum(1 for _ in A25.basis_monomials()) == 2000
    # flat index is a bijection onto range(dim)
    idx = [A23.monomial_index(m) for m in A23.basis_monomials()]
    assert sorted(idx) == list(range(432))


def test_monomial_validation():
    A23.monomial(1, 2, 1, 2, 100)  # ell wraps mod 12
    assert A23.monomial(0, 0, 0, 0, 100).ell == 100 % 12
    with pytest.raises(ValueError):
        A23.monomial(2, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        A23.monomial(0, 3, 0, 0, 0)
    with pytest.raises(ValueError):
        A23.monomial(0, 0, -1, 0, 0)
    with pytest.raises(ValueError):
        A23.generator("x1")


def test_elements_are_normalized_sparse():
    z = A23.element({A23.monomial(0, 0, 0, 0, 0): 0})
    assert z.is_zero() and len(z) == 0
    x = A23.generator("e1")
    assert (x - x).is_zero()
    assert x * A23.one() == x and A23.one() * x == x


def test_generator_examples():
    K, Kinv = A23.generator("K"), A23.generator("Kinv")
    assert K * Kinv == A23.one()
    assert Kinv * K == A23.one()
    # e1^(p1-1) * e1 = 0
    e1 = A23.e(1)
    assert (e1.power(A23.p1 - 1) * e1).is_zero()
    f2 = A23.f(2)
    assert (f2.power(A23.p2 - 1) * f2).is_zero()


def test_defining_relations_all_pass():
    for pair in [(2, 3), (2, 5), (3, 4)]:
        checks = Algebra.for_pair(*pair).verify_defining_relations()
        failed = [c.check_id for c in checks if not c.passed]
        assert failed == []


def test_triple_product_commutator():
    # [e1, f1] equals the displayed weight line
    P = A23.params
    lhs = A23.e(1) * A23.f(1) - A23.f(1) * A23.e(1)
    denom = P.qi_pow(1, P.p2) - P.qi_pow(1, -P.p2)
    rhs = (A23.k_power(P.p2) - A23.k_power(-P.p2)) * denom.inverse()
    assert lhs == rhs


def test_associativity_generators_and_random():
    gens = [A23.generator(n) for n in ("e1", "e2", "f1", "f2", "K", "Kinv")]
    for a in gens:
        for b in gens:
            for c in gens:
                assert (a * b) * c == a * (b * c)
    rng = random.Random(424242)
    basis = list(A23.basis_monomials())
    for _ in range(250):
        u, v, w = (A23.monomial_element(basis[rng.randrange(len(basis))])
                   for _ in range(3))
        assert (u * v) * w == u * (v * w)


def test_random_element_products_distribute():
    rng = random.Random(17)
    basis = list(A23.basis_monomials())

    def rand_elt():
        out = A23.zero()
        for _ in range(4):
            mono = basis[rng.randrange(len(basis))]
            out = out + A23.monomial_element(mono, rng.randint(-3, 3))
        return out

    for _ in range(25):
        x, y, z = rand_elt(), rand_elt(), rand_elt()
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


# ---------------------------------------------------------------------------
# Commutator closed form (independent route)
# ---------------------------------------------------------------------------

def test_commutator_closed_form_single_step_display():
    # m = 1 reduces to [e, f^n] = [n] f^(n-1) W(-(n-1)), the displayed rule
    for pair in [(2, 3), (3, 4)]:
        A = Algebra.for_pair(*pair)
        P = A.params
        for i in (1, 2):
            p, pj = P.p(i), P.other(i)
            denom = (P.qi_pow(i, pj) - P.qi_pow(i, -pj)).inverse()
            for n in range(1, p):
                w = (A.k_power(pj) * P.qi_pow(i, -pj * (n - 1))
                     - A.k_power(-pj) * P.qi_pow(i, pj * (n - 1))) * denom
                expected = A.f(i).power(n - 1) * w * P.bracket(i, n)
                assert A.commutator_closed_form(i, 1, n) == expected


def test_commutator_closed_form_equals_brute_force():
    for pair in [(2, 3), (2, 5), (3, 4)]:
        A = Algebra.for_pair(*pair)
        for i in (1, 2):
            p = A.params.p(i)
            for m in range(1, p):
                for n in range(1, p):
                    e, f = A.e(i).power(m), A.f(i).power(n)
                    assert A.commutator_closed_form(i, m, n) == e * f - f * e


def test_commutator_closed_form_range_check():
    with pytest.raises(ValueError):
        A23.commutator_closed_form(1, 0, 1)
    with pytest.raises(ValueError):
        A23.commutator_closed_form(1, 2, 1)  # p1 = 2 allows only m = n = 1
    with pytest.raises(ValueError):
        A23.commutator_closed_form(2, 1, 3)


def test_cross_copy_generators_commute():
    e1, e2, f1, f2 = A23.e(1), A23.e(2), A23.f(1), A23.f(2)
    assert (e1 * f2 - f2 * e1).is_zero()
    assert (e2 * f1 - f1 * e2).is_zero()
    assert (e1.power(1) * e2.power(2)) == (e2.power(2) * e1.power(1))


# ---------------------------------------------------------------------------
# Hopf operations
# ---------------------------------------------------------------------------

def test_counit_values():
    P = A23.params
    assert A23.counit(A23.generator("K")) == P.one
    assert A23.counit(A23.k_power(7)) == P.one
    assert A23.counit(A23.e(1)).is_zero()
    assert A23.counit(A23.f(2)).is_zero()
    # coefficient extraction only when every e/f exponent vanishes
    x = A23.element({
        A23.monomial(0, 0, 0, 0, 3): 5,
        A23.monomial(1, 0, 0, 0, 0): 7,
    })
    assert A23.counit(x) == 5


def test_antipode_generator_images():
    A = A23
    p1, p2 = A.p1, A.p2
    assert A.antipode(A.e(1)) == A.k_power(-p2) * A.e(1) * (-1)
    assert A.antipode(A.e(2)) == A.e(2) * A.k_power(-p1) * (-1)
    assert A.antipode(A.f(1)) == A.f(1) * A.k_power(p2) * (-1)
    assert A.antipode(A.f(2)) == A.k_power(p1) * A.f(2) * (-1)
    assert A.antipode(A.generator("K")) == A.generator("Kinv")


def test_antipode_is_antimorphism_on_random_pairs():
    rng = random.Random(31)
    basis = list(A23.basis_monomials())
    for _ in range(60):
        u = A23.monomial_element(basis[rng.randrange(len(basis))])
        v = A23.monomial_element(basis[rng.randrange(len(basis))])
        assert A23.antipode(u * v) == A23.antipode(v) * A23.antipode(u)


def test_antipode_square_is_conjugation_exhaustive():
    g = A23.balancing_element()
    ginv = A23.k_power(-(A23.p1 - A23.p2))
    assert g * ginv == A23.one()
    for mono in A23.basis_monomials():
        x = A23.monomial_element(mono)
        assert A23.antipode(A23.antipode(x)) == g * x * ginv


def test_coproduct_generator_images_and_k_powers():
    A = A23
    one = A.params.one
    e1 = A.monomial(1, 0, 0, 0, 0)
    mono_one = A.monomial(0, 0, 0, 0, 0)
    kp2 = A.monomial(0, 0, 0, 0, A.p2)
    d = A.coproduct(A.e(1))
    assert d.terms == {(e1, mono_one): one, (kp2, e1): one}
    for ell in range(A.korder):
        kl = A.monomial(0, 0, 0, 0, ell)
        assert A.coproduct_monomial(kl).terms == {(kl, kl): one}


def test_coproduct_is_algebra_map_on_random_pairs():
    rng = random.Random(8)
    basis = list(A23.basis_monomials())
    for _ in range(30):
        u = basis[rng.randrange(len(basis))]
        v = basis[rng.randrange(len(basis))]
        lhs = A23.coproduct(A23.monomial_element(u) * A23.monomial_element(v))
        rhs = A23.coproduct_monomial(u) * A23.coproduct_monomial(v)
        assert lhs == rhs


def test_coproduct_closed_form_corrected_matches_everywhere_sampled():
    rng = random.Random(99)
    basis = list(A23.basis_monomials())
    for _ in range(60):
        mono = basis[rng.randrange(len(basis))]
        assert A23.coproduct_closed_form(mono, "corrected") == A23.coproduct_monomial(mono)


def test_coproduct_closed_form_printed_variant_fails_on_f1():
    # the transcription misprint is visible already on the bare f1 monomial
    f1 = A23.monomial(0, 0, 1, 0, 0)
    truth = A23.coproduct_monomial(f1)
    assert A23.coproduct_closed_form(f1, "corrected") == truth
    assert A23.coproduct_closed_form(f1, "printed") != truth
    with pytest.raises(ValueError):
        A23.coproduct_closed_form(f1, "fixed")


def test_hopf_axiom_suite_passes():
    checks = A23.verify_hopf_axioms(seed=5)
    assert [c.check_id for c in checks if not c.passed] == []
    # exhaustive mode engaged at (2,3)
    assert any("exhaustive on 432" in c.detail for c in checks)


def test_cache_save_load_roundtrip(tmp_path):
    path = tmp_path / "rewrite.cache"
    A = Algebra.for_pair(2, 3)
    stats = A.build_product_cache()
    assert stats["keys"] == (A.p1 * A.p2) ** 2
    A.save_product_cache(str(path))
    B = Algebra.for_pair(2, 3)
    B.load_product_cache(str(path))
    rng = random.Random(1)
    basis = list(A.basis_monomials())
    for _ in range(40):
        u = basis[rng.randrange(len(basis))]
        v = basis[rng.randrange(len(basis))]
        assert A.product_monomials(u, v) == B.product_monomials(u, v)
    # wrong parameters are rejected
    C = Algebra.for_pair(2, 5)
    with pytest.raises(ValueError):
        C.load_product_cache(str(path))


def test_weight_line_crossing_identity():
    # W(c) f^t = f^t W(c - 2t) — the shift rule the rewrite tables rely on
    A = Algebra.for_pair(3, 4)
    for i in (1, 2):
        p = A.params.p(i)
        for c in range(-2, 3):
            for t in range(1, p):
                line = A.element({
                    A.monomial(0, 0, 0, 0, A.params.other(i)):
                        A.params.qi_pow(i, A.params.other(i) * c),
                    A.monomial(0, 0, 0, 0, -A.params.other(i)):
                        -A.params.qi_pow(i, -A.params.other(i) * c),
                })
                shifted = A.element({
                    A.monomial(0, 0, 0, 0, A.params.other(i)):
                        A.params.qi_pow(i, A.params.other(i) * (c - 2 * t)),
                    A.monomial(0, 0, 0, 0, -A.params.other(i)):
                        -A.params.qi_pow(i, -A.params.other(i) * (c - 2 * t)),
                })
                ft = A.f(i).power(t)
                assert line * ft == ft * shifted
