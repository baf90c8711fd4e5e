import random

import pytest

from arfinv.arf import (
    GF2Form,
    PreconditionError,
    arf_gf2,
    boundary_q0_to_formation,
    boundary_q1_to_L0,
    boundary_q3_to_L2,
    check_symplectic_pair,
    classical_arf,
    find_lagrangian,
    generalized_arf_alt,
    generalized_arf_form,
    generalized_arf_Zx,
    linking_arf_with_lift,
    linking_arf_Zx,
    symplectic_complete,
    tate_lift_columns,
)
from arfinv.linking import LinkingResolution, canonical_order2_form
from arfinv.matrix import EpsForm, LagrangianWitness, Mat, SplitForm, hyperbolic, inverse_unimodular
from arfinv.oracle import random_unimodular
from arfinv.poly import ResPoly
from arfinv.qgroups import Q0ClassZx, Q3ClassZx, X_Z, reduce_q0_Zx, reduce_q3_Zx

X = [0, 1]
HYP = GF2Form.from_rows([[0, 1], [0, 0]])
ODD = GF2Form.from_rows([[1, 1], [0, 1]])


def test_classical_arf_examples():
    e, es = [(1, 0)], [(0, 1)]
    assert classical_arf(HYP, e, es) == 0
    assert classical_arf(ODD, e, es) == 1
    four = GF2Form.from_rows([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    assert arf_gf2(four) == 1
    assert classical_arf(four, [(1, 0, 0, 0), (0, 0, 1, 0)], [(0, 1, 0, 0), (0, 0, 0, 1)]) == 1


def test_classical_arf_checks_its_bases():
    with pytest.raises(PreconditionError):
        classical_arf(HYP, [(1, 0)], [(1, 0)])
    with pytest.raises(PreconditionError):
        arf_gf2(GF2Form.from_rows([[1, 0], [0, 1]]))


def test_symplectic_complete():
    assert symplectic_complete(HYP, [(1, 0)]) == [(0, 1)]
    rng = random.Random(3)
    done = 0
    while done < 30:
        f = GF2Form.from_rows([[rng.randint(0, 1) for _ in range(6)] for _ in range(6)])
        try:
            e = find_lagrangian(f)
        except PreconditionError:
            continue
        done += 1
        assert check_symplectic_pair(f, e, symplectic_complete(f, e)) is None


def test_tate_lift_columns():
    g = tate_lift_columns([ResPoly(2, [1]), ResPoly(2, [0, 1]), ResPoly(2, [1, 1, 1])])
    assert g == Mat([[1, 0, [1, 1]], [0, 1, 1]])


def test_generalized_arf_examples():
    assert generalized_arf_Zx(SplitForm(-1, Mat.zeros(1), Mat.zeros(1))).is_zero()
    s = SplitForm(-1, Mat([[X]]), Mat([[1]]))
    assert tate_lift_columns(s.mu.diagonal()) == Mat([[0], [1]])
    assert generalized_arf_Zx(s) == Q3ClassZx.make([0, 1])
    assert generalized_arf_alt(s) == generalized_arf_Zx(s)
    assert generalized_arf_form(hyperbolic(2, -1), LagrangianWitness.standard(2)).is_zero()


def test_generalized_arf_of_canonical_form():
    m = Mat([[[1, 1, 0, 1], [2, 1]], [[2, 1], [0, 0, 1]]])
    k = EpsForm(-1, Mat([[1, 0, 1, 0], [0, X, 0, 1], [0, 0, m[0, 0], m[0, 1]], [0, 0, m[1, 0], m[1, 1]]]))
    assert generalized_arf_form(k, LagrangianWitness.standard(2)) == reduce_q3_Zx(m)
    # the boundary form (M 1; 0 X) has the roles of mu and nu swapped
    assert generalized_arf_form(boundary_q3_to_L2(m), LagrangianWitness.standard(2)) == reduce_q3_Zx(m)


def test_generalized_arf_coordinate_invariance():
    rng = random.Random(11)
    m = Mat.diag([[1, 0, 1], [0, 1, 1]])
    k = EpsForm(-1, Mat([[1, 0, 1, 0], [0, X, 0, 1], [0, 0, m[0, 0], 0], [0, 0, 0, m[1, 1]]]))
    w = LagrangianWitness.standard(2)
    for _ in range(5):
        u, uinv = random_unimodular(rng, 4)
        moved = EpsForm(-1, u.T * k.psi * u)
        b = uinv * w.basis()
        w2 = LagrangianWitness(b.submatrix(range(4), range(2)), b.submatrix(range(4), range(2, 4)))
        assert generalized_arf_form(moved, w2) == reduce_q3_Zx(m)


def test_generalized_arf_needs_lagrangian():
    with pytest.raises(ValueError):
        generalized_arf_form(EpsForm(-1, Mat([[1, 0], [0, 1]])), LagrangianWitness.standard(1))


def test_linking_arf_examples():
    res = LinkingResolution(Mat([[2]]), Mat([[1]]), Mat([[0]]))
    assert linking_arf_Zx(res).is_zero()
    res = LinkingResolution(Mat([[2]]), Mat([[1]]), Mat([[4]]))
    assert linking_arf_Zx(res) == Q0ClassZx.make(4)
    assert linking_arf_Zx(res, [ResPoly(2, [1])]) == Q0ClassZx.make(4)
    with pytest.raises(PreconditionError):
        linking_arf_Zx(res, [ResPoly(2, [0])])


def test_linking_arf_canonical():
    for m in (Mat.diag([[0, 2], 0]), Mat([[[2, 2], 4], [4, [0, 0, 6]]]), Mat.diag([6, [2, 4, 2]])):
        res, _ = canonical_order2_form(m)
        assert linking_arf_Zx(res) == reduce_q0_Zx(m)


def test_linking_arf_lift_must_kill_d():
    res, _ = canonical_order2_form(Mat.zeros(1), X_Z)
    with pytest.raises(PreconditionError):
        linking_arf_with_lift(LinkingResolution(Mat([[1]]), Mat([[2]]), Mat([[0]])), Mat([[1], [0]]))
    assert linking_arf_with_lift(res, Mat([[1], [0]])) is not None


def test_boundary_q3():
    assert boundary_q3_to_L2(Mat([[1]]), X_Z) == EpsForm(-1, Mat([[1, 1], [0, 1]]))
    assert boundary_q3_to_L2(Mat([[0]]), X_Z) == EpsForm(-1, Mat([[0, 1], [0, 1]]))
    f = boundary_q3_to_L2(Mat.diag([X, 0]))
    assert f.psi == Mat([[X, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 0, 0, X]])


def test_boundary_q1():
    assert boundary_q1_to_L0(Mat([[1]]), X_Z) == EpsForm(1, Mat([[0, -1], [0, -2]]))
    assert boundary_q1_to_L0(Mat([[0]]), X_Z) == EpsForm(1, Mat([[0, 1], [0, -2]]))
    f = boundary_q1_to_L0(Mat.zeros(2))
    assert f.psi == Mat([[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, -2, 0], [0, 0, 0, [0, -2]]])
    with pytest.raises(PreconditionError):
        boundary_q1_to_L0(Mat.identity(2))


def test_boundary_q0():
    f = boundary_q0_to_formation(Mat.zeros(2))
    assert f.G_inclusion == Mat([[1, 0], [0, 1], [0, 0], [0, 0]])
    f = boundary_q0_to_formation(Mat([[1]]), X_Z)
    assert f.G_inclusion == Mat([[0], [1]])
    f.check()
    f = boundary_q0_to_formation(Mat.diag([2, 0]))
    assert f.G_inclusion == Mat([[-1, 0], [0, 1], [2, 0], [0, 0]])
    f.check(require_s=False)
