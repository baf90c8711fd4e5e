import pytest

from arfinv.matrix import (
    EpsForm,
    LagrangianWitness,
    Mat,
    SplitForm,
    det,
    direct_sum,
    direct_sum_witness,
    hyperbolic,
    inverse_unimodular,
    is_equivalent,
    is_nonsingular,
    is_quad,
    split_coordinates,
    split_transform,
    symmetrize,
    verify_lagrangian,
    verify_quadratic_lagrangian,
)
from arfinv.poly import IntPoly

X = [0, 1]


def test_is_quad():
    assert is_quad(Mat.diag([2, [0, 2]]))
    assert is_quad(Mat([[0, 1], [1, 0]]))
    assert not is_quad(Mat.diag([1, 0]))
    assert not is_quad(Mat([[0, 1], [0, 0]]))


@pytest.mark.parametrize(
    "eps, psi, sym",
    [
        (-1, [[0, 1], [0, 0]], [[0, 1], [-1, 0]]),
        (1, [[1, 1], [0, 1]], [[2, 1], [1, 2]]),
        (-1, [[X, 1], [0, 1]], [[0, 1], [-1, 0]]),
    ],
)
def test_symmetrize(eps, psi, sym):
    assert symmetrize(EpsForm(eps, Mat(psi))) == Mat(sym)


def test_is_nonsingular():
    assert is_nonsingular(hyperbolic(1, -1))
    assert not is_nonsingular(EpsForm(1, Mat([[2]])))
    assert is_nonsingular(EpsForm(-1, Mat([[X, 1], [0, [0, 0, 1]]])))


def test_verify_lagrangian():
    for ell in (1, 2, 3):
        for eps in (1, -1):
            assert verify_lagrangian(hyperbolic(ell, eps), LagrangianWitness.standard(ell))
    # symmetrization is definite, so no line is a lagrangian
    w = LagrangianWitness(Mat([[1], [0]]), Mat([[0], [1]]))
    definite = EpsForm(1, Mat([[1, 0], [0, 1]]))
    assert not verify_lagrangian(definite, w)
    assert not verify_lagrangian(definite, LagrangianWitness(Mat([[1], [1]]), Mat([[0], [1]])))
    f = EpsForm(-1, Mat([[X, 1], [0, 1]]))
    assert verify_lagrangian(f, w)


def test_quadratic_lagrangian_is_stronger():
    f = EpsForm(-1, Mat([[X, 1], [0, 1]]))
    w = LagrangianWitness.standard(1)
    assert verify_lagrangian(f, w)
    assert not verify_quadratic_lagrangian(f, w)
    assert verify_quadratic_lagrangian(hyperbolic(1, -1), w)


def test_split_hyperbolic_is_zero():
    s = split_coordinates(hyperbolic(2, -1), LagrangianWitness.standard(2))
    assert s.mu.is_zero() and s.nu.is_zero()


def test_split_already_split_is_unchanged():
    mu = Mat.diag([1, X])
    nu = Mat([[[1, 2], [0, 1]], [[0, 1], [3]]])
    f = SplitForm(-1, mu, nu).to_form()
    s = split_coordinates(f, LagrangianWitness.standard(2))
    assert s.mu == mu and s.nu == nu


def test_split_nonsingular_variant_of_example():
    # (x 2; -1 1) is singular; (x 2; 1 1) is the nonsingular neighbour
    f = EpsForm(-1, Mat([[X, 2], [1, 1]]))
    with pytest.raises(ValueError):
        split_coordinates(EpsForm(-1, Mat([[X, 2], [-1, 1]])), LagrangianWitness.standard(1))
    s, t = split_transform(f, LagrangianWitness.standard(1))
    assert s.mu == Mat([[X]]) and s.nu == Mat([[1]])
    assert is_equivalent(f, s.to_form(), t)


def test_split_transform_general():
    f = EpsForm(-1, Mat([[[1, 1], [1, 1]], [[0, 1], [5, 0, 2]]]))
    w = LagrangianWitness.standard(1)
    assert verify_lagrangian(f, w)
    s, t = split_transform(f, w)
    assert is_equivalent(f, s.to_form(), t)


def test_hyperbolic_and_direct_sum():
    assert hyperbolic(1, -1).psi == Mat([[0, 1], [0, 0]])
    assert hyperbolic(0, 1).dim == 0
    assert hyperbolic(2, 1).dim == 4
    f = EpsForm(-1, Mat([[1, 1], [0, 1]]))
    assert direct_sum(f, hyperbolic(0, -1)) == f
    h2 = direct_sum(hyperbolic(1, -1), hyperbolic(1, -1))
    perm = Mat([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    assert perm.T * h2.psi * perm == hyperbolic(2, -1).psi
    assert direct_sum(f, hyperbolic(2, -1)).dim == 6
    w = direct_sum_witness(LagrangianWitness.standard(1), LagrangianWitness.standard(1))
    assert verify_lagrangian(h2, w)


def test_det_and_inverse():
    m = Mat([[1, X], [0, 1]]) * Mat([[1, 0], [[2, 0, 1], 1]])
    assert det(m) == IntPoly([1])
    assert inverse_unimodular(m) * m == Mat.identity(2)
    assert det(Mat([[2, 1], [1, X]])) == IntPoly([-1, 2])


def test_json_round_trip_and_validation():
    m = Mat([[[1, 0, 2], -3], [0, X]])
    assert Mat.from_json(m.to_json()) == m
    f = EpsForm(-1, m)
    assert EpsForm.from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        Mat.from_json([[1, "a"]])
    with pytest.raises(ValueError):
        Mat.from_json([[1, 2], [3]])
