import numpy as np
import pytest

from bhforms import (
    HomogeneousPolynomial,
    MultiIndex,
    MultilinearForm,
    SlotEmbedding,
    bh_exponent,
    diagonal_polynomial,
    disjointify,
    exact_norm_real,
    lift_polynomial,
    littlewood_s2,
    lp_sum,
    poly_lower_bound,
    poly_restricted_sum,
    reconstruct_form,
    s_family,
)
from bhforms.verify import make_corpus


def test_embedding_is_the_canonical_interleaving():
    emb = SlotEmbedding(3)
    assert emb.apply(1, 1) == 1
    assert emb.apply(2, 1) == 2
    assert emb.apply(1, 2) == 4
    # images partition 1..3n by residue
    seen = {emb.apply(i, j) for i in (1, 2, 3) for j in (1, 2, 3, 4)}
    assert seen == set(range(1, 13))
    for v in range(1, 13):
        slot, j = emb.invert(v)
        assert emb.apply(slot, j) == v


def test_disjointify_s2():
    T1, emb = disjointify(littlewood_s2())
    assert emb.m == 2
    # tuple (1,1) lands at (sigma_1(1), sigma_2(1)) = (1,2)
    assert T1.coefficient((1, 2)) == 1
    assert sorted(T1.coeffs.values()) == sorted(littlewood_s2().coeffs.values())
    assert T1.dims == (4, 4)


def test_disjointify_preserves_norm():
    for T in make_corpus(30, 3, 3, seed=404):
        T1, _ = disjointify(T)
        a, b = exact_norm_real(T).value, exact_norm_real(T1).value
        if T.is_integer():
            assert a == b
        else:
            assert a == pytest.approx(b, rel=1e-9)


def test_diagonal_polynomial_preserves_bh_sum():
    for T in make_corpus(30, 3, 3, seed=505):
        T1, _ = disjointify(T)
        P = diagonal_polynomial(T1)
        p = bh_exponent(T.m)
        assert len(P.coeffs) == len(T.coeffs)
        assert lp_sum(P.coeffs.values(), p) == pytest.approx(
            lp_sum(T.coeffs.values(), p), rel=1e-9
        )


def test_diagonal_polynomial_bounded_by_form_norm():
    rng = np.random.default_rng(6)
    for T in make_corpus(15, 3, 3, seed=606):
        T1, _ = disjointify(T)
        P = diagonal_polynomial(T1)
        norm = exact_norm_real(T).value
        for _ in range(20):
            x = rng.uniform(-1, 1, size=T1.dims[0])
            assert abs(P.evaluate(x)) <= norm * (1 + 1e-9)


def test_round_trip_recovers_form():
    for T in make_corpus(30, 3, 3, seed=707):
        T1, emb = disjointify(T)
        P = diagonal_polynomial(T1)
        assert reconstruct_form(P, emb, T.dims) == T


def test_diagonal_polynomial_accumulates_without_disjointification():
    T = MultilinearForm.build(2, (1, 1), {(1, 1): 1})
    P = diagonal_polynomial(T)
    assert P.coeffs == {MultiIndex.from_pairs([(1, 2)]): 1}


def test_poly_norm_chain():
    for T in make_corpus(20, 3, 3, seed=808):
        T1, _ = disjointify(T)
        P = diagonal_polynomial(T1)
        assert poly_lower_bound(P, seed=3).value <= exact_norm_real(T).value + 1e-9


def test_lift_bijection_and_omega():
    rng = np.random.default_rng(9)
    for trial in range(30):
        d = 1 + trial % 2
        M = d + 1
        coeffs = {}
        for _ in range(int(rng.integers(1, 5))):
            vars_ = rng.choice(np.arange(2, 7), size=d, replace=False)
            coeffs[MultiIndex.from_pairs([(int(v), 1) for v in vars_])] = float(
                rng.uniform(-2, 2)
            )
        P = HomogeneousPolynomial.build(d, 6, coeffs)
        m = M + int(rng.integers(0, 3))
        L = lift_polynomial(P, m)
        assert L.m == m
        assert len(L.coeffs) == len(P.coeffs)
        assert sorted(L.coeffs.values()) == sorted(P.coeffs.values())
        assert all(alpha.omega <= M for alpha in L.coeffs)
        # restricted sum of the lift recovers the full sum of the original
        for r in (1.0, 1.5, 2.0):
            assert poly_restricted_sum(L, M, r) == pytest.approx(
                lp_sum(P.coeffs.values(), r), rel=1e-12
            )
        for _ in range(30):
            x = rng.uniform(-1, 1, size=6)
            assert abs(L.evaluate(x)) <= abs(P.evaluate(x)) * (1 + 1e-12) + 1e-15


def test_lift_degree_mismatch():
    P = HomogeneousPolynomial.build(2, 3, {MultiIndex.from_pairs([(2, 2)]): 1})
    with pytest.raises(ValueError):
        lift_polynomial(P, 2)


def test_lift_of_s_family_diagonal():
    T1, _ = disjointify(s_family(3))
    P = diagonal_polynomial(T1)
    L = lift_polynomial(P, 5)
    p = bh_exponent(3)
    assert lp_sum(L.coeffs.values(), p) == pytest.approx(
        lp_sum(P.coeffs.values(), p), rel=1e-12
    )
