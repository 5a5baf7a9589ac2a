"""Quiver algebras, Cartan matrices, Coxeter polynomials."""

import numpy as np
import pytest

from bpsing.grading import WeightSystem
from bpsing.qalg import (
    AlgebraPresentation,
    IntPolynomial,
    coxeter_polynomial,
    dynkin_path_algebra,
    gamma_quiver,
    lambda_q,
    nakayama,
    replicated,
    tensor,
)

W34 = WeightSystem((3, 4))
W345 = WeightSystem((3, 4, 5))


def test_nakayama_cartans():
    assert (nakayama(3, 1).cartan == np.eye(3, dtype=int)).all()
    assert (nakayama(3, 2).cartan == np.array([[1, 1, 0], [0, 1, 1], [0, 0, 1]])).all()
    band = nakayama(6, 4).cartan
    for i in range(6):
        for j in range(6):
            assert band[i, j] == (1 if 0 <= j - i < 4 else 0)


def test_tensor_kron():
    a, b = nakayama(2, 2), nakayama(3, 2)
    t = tensor(a, b)
    assert (t.cartan == np.kron(a.cartan, b.cartan)).all()
    assert t.size == 6
    one = nakayama(1, 1)
    assert (tensor(one, b).cartan == b.cartan).all()


def test_tensor_determinant_identity():
    a, b = nakayama(3, 3), nakayama(4, 2)
    det = round(np.linalg.det(tensor(a, b).cartan))
    da, db = round(np.linalg.det(a.cartan)), round(np.linalg.det(b.cartan))
    assert det == da ** b.size * db ** a.size


def test_lambda_q_figure_counts():
    alg = lambda_q(W34, (2, 2))
    assert alg.size == 6
    assert len(alg.arrows) == 7
    nil = [r for r in alg.relations if "^" in r]
    comm = [r for r in alg.relations if "^" not in r]
    assert len(comm) == 2 and len(nil) == 2


def test_lambda_q_cartans():
    assert (lambda_q(W34, (2, 2)).cartan == tensor(nakayama(2, 2), nakayama(3, 2)).cartan).all()
    full = lambda_q(W34, (2, 3))
    assert (full.cartan == tensor(nakayama(2, 2), nakayama(3, 3)).cartan).all()
    one = lambda_q(WeightSystem((5,)), (1,))
    assert (one.cartan == np.eye(4, dtype=int)).all()
    with pytest.raises(ValueError):
        lambda_q(W34, (3, 2))


def test_replicated_structure():
    a = nakayama(3, 3)
    assert replicated(a, 0) is a
    dup = replicated(a, 1)
    assert dup.size == 6
    c = a.cartan
    assert (dup.cartan[:3, :3] == c).all()
    assert (dup.cartan[3:, :3] == c.T).all()
    assert (dup.cartan[:3, 3:] == 0).all()
    assert (dup.cartan[3:, 3:] == c).all()


def test_gamma_quiver_shapes():
    g1 = gamma_quiver(W345, 0)
    assert g1.size == 24
    connecting = [a for a in g1.arrows if "*" in a[0]]
    assert len(connecting) == 1
    assert len([a for a in gamma_quiver(W345, 1).arrows if "*" in a[0]]) == 2
    assert len([a for a in gamma_quiver(W345, 2).arrows if "*" in a[0]]) == 3
    # connecting arrows run from the top corner into the next copy's bottom corner
    src, tgt = connecting[0][1], connecting[0][2]
    assert src == "(2,3,4)@0" and tgt == "(2,1,1)@1"


def test_gamma_34_is_nakayama_up_to_coxeter():
    # for two weights the replicated algebras are Nakayama algebras
    assert coxeter_polynomial(gamma_quiver(W34, 1)) == coxeter_polynomial(nakayama(6, 3))
    assert coxeter_polynomial(gamma_quiver(W34, 0)) == coxeter_polynomial(nakayama(6, 4))


def test_dynkin_cartans():
    a2 = dynkin_path_algebra("A", 2)
    assert (a2.cartan == np.array([[1, 1], [0, 1]])).all()
    d4 = dynkin_path_algebra("D", 4)
    assert d4.size == 4
    assert d4.cartan.sum() == 7  # identity plus three arrows
    assert dynkin_path_algebra("E", 6).size == 6
    with pytest.raises(ValueError):
        dynkin_path_algebra("E", 9)


def test_coxeter_examples():
    assert coxeter_polynomial(nakayama(1, 1)).coeffs == (1, 1)
    assert coxeter_polynomial(nakayama(2, 2)).coeffs == (1, 1, 1)


def test_coxeter_deterministic():
    a = tensor(nakayama(2, 2), nakayama(3, 3))
    assert coxeter_polynomial(a) == coxeter_polynomial(a)


def test_coxeter_orientation_independent_for_d4():
    d4 = dynkin_path_algebra("D", 4)
    # reversed orientation: center into the three outer vertices
    rev = AlgebraPresentation(
        "D4rev",
        d4.vertices,
        tuple((lab, t, s) for lab, s, t in d4.arrows),
        (),
        d4.cartan.T,
    )
    assert coxeter_polynomial(d4) == coxeter_polynomial(rev)


def test_happel_seidel_triples():
    for a, b in ((3, 3), (3, 4), (3, 5), (4, 4), (2, 7)):
        m = (a - 1) * (b - 1)
        p1 = coxeter_polynomial(nakayama(m, a))
        p2 = coxeter_polynomial(nakayama(m, b))
        p3 = coxeter_polynomial(tensor(nakayama(a - 1, a - 1), nakayama(b - 1, b - 1)))
        assert p1 == p2 == p3, (a, b)


def test_replicated_derived_suite():
    for p in ((3, 4), (3, 4, 5), (2, 3, 4)):
        ws = WeightSystem(p)
        cub = None
        for w in p:
            piece = nakayama(w - 1, w - 1)
            cub = piece if cub is None else tensor(cub, piece)
        target = coxeter_polynomial(cub)
        for t in range(len(p)):
            assert coxeter_polynomial(gamma_quiver(ws, t)) == target, (p, t)


def test_dynkin_suite():
    cases = ((2, "D", 4), (3, "E", 6), (4, "E", 8))
    for m, letter, rank in cases:
        lhs = coxeter_polynomial(tensor(nakayama(2, 2), nakayama(m, m)))
        rhs = coxeter_polynomial(dynkin_path_algebra(letter, rank))
        assert lhs == rhs, (letter, rank)
    for l, m in ((2, 2), (2, 3), (3, 3)):
        lhs = coxeter_polynomial(tensor(nakayama(l, l), nakayama(m, m)))
        rhs = coxeter_polynomial(replicated(nakayama(m, m), l - 1))
        assert lhs == rhs, (l, m)


def test_determinant_constant_on_classes():
    for a, b in ((3, 4), (4, 4)):
        m = (a - 1) * (b - 1)
        d1 = round(np.linalg.det(nakayama(m, a).cartan))
        d2 = round(np.linalg.det(tensor(nakayama(a - 1, a - 1), nakayama(b - 1, b - 1)).cartan))
        assert abs(d1) == abs(d2) == 1


def test_int_polynomial_str_and_json():
    p = IntPolynomial((1, 0, -2, 1))
    assert str(p) == "x^3 - 2*x + 1"
    assert p.to_json() == {"coeffs": [1, 0, -2, 1]}
    with pytest.raises(ValueError):
        IntPolynomial((0, 1))


def test_dot_export():
    dot = lambda_q(W34, (2, 2)).to_dot()
    assert dot.startswith("digraph")
    assert "style=dashed" in dot
    assert dot.count("->") >= 7
