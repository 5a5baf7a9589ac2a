"""The matrix-factorization oracle: constructions, conventions, audits."""

import random

import pytest

from bpsing.grading import WeightSystem
from bpsing.linalg import PARANOIA_MODULUS
from bpsing.mforacle import (
    GradedMF,
    hom_profile,
    mf_of,
    oracle_hom,
    rank1_mf,
    stable_hom_dim_oracle,
    tensor_mf,
)
from bpsing.stable import StableObject, U, cuboid_objects, knorrer_transport, rho_k

W2 = WeightSystem((2,))
W22 = WeightSystem((2, 2))
W34 = WeightSystem((3, 4))


def test_rank1():
    f = rank1_mf(W2, 0, 1)
    assert f.d0 == (((1, (1,)),),)
    assert f.d1 == (((1, (1,)),),)
    assert f.odd == (W2.x(0),)
    with pytest.raises(ValueError):
        rank1_mf(W2, 0, 2)


def test_tensor_is_koszul_factorization():
    f = tensor_mf(rank1_mf(W22, 0, 1), rank1_mf(W22, 1, 1))
    # d0 = [[X1, X2], [-X2, X1]], d1 = [[X1, -X2], [X2, X1]]
    assert f.d0 == (((1, (1, 0)), (1, (0, 1))), ((-1, (0, 1)), (1, (1, 0))))
    assert f.d1 == (((1, (1, 0)), (-1, (0, 1))), ((1, (0, 1)), (1, (1, 0))))


def test_tensor_rank_and_validation():
    f = mf_of(rho_k(WeightSystem((2, 2, 2))))
    assert len(f.even) == len(f.odd) == 4
    with pytest.raises(ValueError):
        tensor_mf(rank1_mf(W22, 0, 1), rank1_mf(W22, 0, 1))


def test_invariant_guards_broken_factorization():
    f = rank1_mf(W2, 0, 1)
    with pytest.raises(ValueError):
        GradedMF(W2, f.even, f.odd, (((1, (0,)),),), f.d1, f.variables)


def test_end_of_residue_field():
    f = mf_of(rho_k(W2))
    assert stable_hom_dim_oracle(f, f, 0) == 1
    assert stable_hom_dim_oracle(f, f, 1) == 0
    assert stable_hom_dim_oracle(f, f, 2) == 0  # Hom(k, k[2]) = Hom(k, k(c)); disjoint degrees


def test_oracle_cuboid_matrix_33():
    w33 = WeightSystem((3, 3))
    cub = cuboid_objects(w33)
    mat = [[oracle_hom(a, b) for b in cub] for a in cub]
    assert mat == [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]


def test_oracle_rigidity_sample():
    assert oracle_hom(rho_k(W34), rho_k(W34), 1) == 0


def _random_objects(ws, count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        ell = tuple(rng.randrange(1, p) for p in ws.p)
        tw = ws.element([rng.randrange(p) for p in ws.p], rng.randrange(-2, 3))
        out.append(StableObject(ws, ell, tw, rng.randrange(-3, 4)))
    return out


@pytest.mark.parametrize("ws", [W34, WeightSystem((2, 2, 2))])
def test_suspension_pins_to_canonical_twist(ws):
    for o in _random_objects(ws, 6, seed=11):
        shifted = StableObject(ws, o.ell, o.twist, o.shift + 2)
        twisted = StableObject(ws, o.ell, o.twist + ws.c(), o.shift)
        assert hom_profile(mf_of(shifted)) == hom_profile(mf_of(twisted))


def test_two_periodicity():
    f = mf_of(U(W34, (2, 2)))
    g = mf_of(rho_k(W34))
    for m in range(-3, 4):
        assert stable_hom_dim_oracle(f, g.twist(W34.c()), m) == stable_hom_dim_oracle(f, g, m + 2)


def test_full_reflection_identity_profiles():
    # U^l[n] = U^{nc-l}(nc-l)
    for ws in (W34, WeightSystem((2, 2, 2))):
        n = ws.n
        for base in cuboid_objects(ws):
            lhs = StableObject(ws, base.ell, ws.zero(), n)
            flip = ws.element([p - e for p, e in zip(ws.p, base.ell)])
            rhs = StableObject(ws, flip.coeffs, flip, 0)
            assert hom_profile(mf_of(lhs)) == hom_profile(mf_of(rhs))


def test_socle_identity_profiles():
    # U^{s+delta} = rho(k)(s)[-n]
    lhs = mf_of(U(W34, (2, 3)))
    rhs = mf_of(StableObject(W34, (1, 1), W34.s(), -2))
    assert hom_profile(lhs) == hom_profile(rhs)


def test_reflection_rewrites_have_equal_profiles():
    o = U(W34, (1, 2), W34.x(1), 0)
    for i in (0, 1):
        assert hom_profile(mf_of(o)) == hom_profile(mf_of(o.reflect(i)))


def test_knorrer_profile_transport():
    w3 = WeightSystem((3,))
    for a in cuboid_objects(w3):
        fa = mf_of(a)
        ta = mf_of(knorrer_transport(a))
        for b in cuboid_objects(w3):
            for m in (0, 1):
                lhs = stable_hom_dim_oracle(fa, mf_of(b), m)
                rhs = stable_hom_dim_oracle(ta, mf_of(knorrer_transport(b)), m)
                assert lhs == rhs


def test_field_independence_spot():
    pairs = [(rho_k(W34), rho_k(W34)), (U(W34, (2, 3)), rho_k(W34)), (rho_k(W34), U(W34, (1, 3), W34.x(0), 1))]
    for a, b in pairs:
        for m in (-1, 0, 1, 2):
            assert oracle_hom(a, b, m) == oracle_hom(a, b, m, PARANOIA_MODULUS)


def test_oracle_agrees_with_closed_hom_formula():
    # Hom(U^l(x)[-sigma(x)], U^z(y)[-sigma(y)]) is one exactly when
    # l >= z and 0 <= x - y <= s, for the cuboid with small box twists
    ws = W34
    s = ws.s()
    twists = [ws.zero(), ws.x(0), ws.x(1), ws.x(0) + ws.x(1)]
    for la in ((1, 1), (2, 3), (2, 1)):
        for lb in ((1, 1), (2, 3), (1, 2)):
            for x in twists:
                for y in twists:
                    jointly_in_family = all(
                        (x.coeffs[i] == 0 and y.coeffs[i] == 0)
                        or (la[i] == 1 and lb[i] == 1 and x.coeffs[i] <= p - 2 and y.coeffs[i] <= p - 2)
                        for i, p in enumerate(ws.p)
                    )
                    if not jointly_in_family:
                        continue
                    a = StableObject(ws, la, x, -x.sigma())
                    b = StableObject(ws, lb, y, -y.sigma())
                    got = stable_hom_dim_oracle(mf_of(a), mf_of(b), 0)
                    ge = all(i >= j for i, j in zip(la, lb))
                    diff = x - y
                    inside = diff.level >= 0 and (s - diff).level >= 0
                    assert got == (1 if ge and inside else 0), (la, lb, str(x), str(y))


def test_field_independence_full_34_suite():
    # the complete (3,4) probe suite over both primes
    import itertools

    ws = W34
    s = ws.s()
    cub = cuboid_objects(ws)
    twists = set()
    for coeffs in itertools.product(*(range(p) for p in ws.p)):
        for lev in range(-3, 4):
            v = StableObject(ws, (1, 1), ws.element(coeffs, lev), 0).twist
            if (s - v).level >= 0 and (s + v).level >= 0:
                for t in range(-2, 3):
                    twists.add(v + t * ws.c())
    checked = 0
    for a0 in cub:
        for u in sorted(twists, key=lambda e: (e.level, e.coeffs)):
            for m in range(-4, 5):
                a = StableObject(ws, a0.ell, u, m)
                fa = mf_of(a)
                for b in cub:
                    fb = mf_of(b)
                    assert stable_hom_dim_oracle(fa, fb, 0) == stable_hom_dim_oracle(fa, fb, 0, PARANOIA_MODULUS)
                    checked += 1
    assert checked >= 6000


def test_zero_object_has_zero_profile():
    from bpsing.stable import zero_object

    f = mf_of(zero_object(W34))
    assert all(d == 0 for _, d in hom_profile(f))


def test_hom_complex_differentials_compose_to_zero():
    import numpy as np

    from bpsing.mforacle import _differential, _term_basis

    f = mf_of(U(W34, (2, 3), W34.x(0), 1))
    g = mf_of(rho_k(W34))
    for m in (-2, -1, 0, 1, 2):
        prev = _term_basis(f, g, m - 1)
        mid = _term_basis(f, g, m)
        nxt = _term_basis(f, g, m + 1)
        d1 = _differential(f, g, m - 1, prev, mid, 32003)
        d2 = _differential(f, g, m, mid, nxt, 32003)
        assert not ((d2 @ d1) % 32003).any()
