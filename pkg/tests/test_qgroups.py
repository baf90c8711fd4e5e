import pytest

from arfinv.matrix import Mat
from arfinv.poly import IntPoly, ResPoly
from arfinv.qgroups import (
    NumeratorError,
    Q0ClassZx,
    Q3ClassZx,
    QnClassZ,
    X_Z,
    X_ZX,
    check_numerator_q0,
    class_from_json,
    f01,
    f0x,
    fm1_1,
    lgroups_table,
    preimage_f01,
    preimage_f01_literal,
    preimage_f0x,
    preimage_f0x_literal,
    preimage_q0_Zx,
    preimage_q3_Zx,
    q_add,
    q_equal,
    q_neg,
    q_zero,
    reduce_q0_Zx,
    reduce_q1_Zx,
    reduce_q3_Zx,
    reduce_qn_Z,
    unil_table,
)

X = [0, 1]


def test_check_numerator_q0():
    assert check_numerator_q0(Mat.zeros(2))
    assert check_numerator_q0(Mat([[1]]), X_Z)
    assert not check_numerator_q0(Mat([[0, 1], [1, 0]]), X_ZX)


def test_reduce_q0_examples():
    assert reduce_q0_Zx(Mat.zeros(2)).is_zero()
    assert reduce_q0_Zx(Mat.diag([[0, 2], 0])) == Q0ClassZx.make(0, [1], [1], [], [])


def test_reduce_q0_rejects_non_numerator():
    with pytest.raises(NumeratorError):
        reduce_q0_Zx(Mat.diag([X, 0]))
    with pytest.raises(NumeratorError):
        reduce_q0_Zx(Mat([[0, 1], [1, 0]]))


def test_naive_preimage_holds_without_even_terms():
    # a_0 + 2 sum b_i x^{2i+1}: s = a_0, Z_4 part sum b_i x^i
    a = IntPoly([5, 2, 0, 6, 0, 0, 0, 2])
    s, d, u2 = f01(a)
    assert s == 5
    # b = (1, 3, 0, 1); x^7 is (2*3+1) * 2^0, and x^3 * 2 = x^6 is absent
    assert d == ResPoly(4, [1, 3, 0, 1]) and not u2


def test_naive_preimage_fails_with_even_terms():
    # f_0(1)(2x^2): x^2 = 1 * 2^1 feeds the i = 0 sum
    assert f01(IntPoly([0, 0, 2])) == (0, ResPoly(4, [1]), ResPoly(2, [1]))
    assert reduce_q0_Zx(Mat.diag([[0, 0, 2], 0])) == Q0ClassZx.make(0, [1], [1], [1], [])
    literal = preimage_q0_Zx(Q0ClassZx.make(0, [], [], [1], []), literal=True)
    assert reduce_q0_Zx(literal) != Q0ClassZx.make(0, [], [], [1], [])
    assert f0x(preimage_f0x_literal(ResPoly(4), ResPoly(2, [1]))) != (ResPoly(4), ResPoly(2, [1]))


def test_corrected_preimages_round_trip():
    for s in range(8):
        for d in ([], [1], [3, 2], [0, 1, 3]):
            for u2 in ([], [1], [0, 1], [1, 1, 1]):
                a = preimage_f01(s, ResPoly(4, d), ResPoly(2, u2))
                assert f01(a) == (s, ResPoly(4, d), ResPoly(2, u2))
                assert preimage_f01_literal(s, ResPoly(4, d), ResPoly(2)) == preimage_f01(s, ResPoly(4, d), ResPoly(2))
    for e in ([], [2], [1, 3], [3, 0, 1]):
        for u3 in ([], [1], [1, 1]):
            assert f0x(preimage_f0x(ResPoly(4, e), ResPoly(2, u3))) == (ResPoly(4, e), ResPoly(2, u3))


def test_reduce_q3_examples():
    assert reduce_q3_Zx(Mat([[0, 1], [1, 0]])).is_zero()
    assert reduce_q3_Zx(Mat.zeros(2)).is_zero()
    # a + cx = c_0 + sum c_{i+1} x^{2i+1}
    m = Mat.diag([[1, 1, 0, 0, 0, 1], 0])
    assert reduce_q3_Zx(m) == Q3ClassZx.make([1, 1, 0, 1])
    # same target via the c entry: c x contributes to odd powers
    assert reduce_q3_Zx(Mat.diag([1, [1, 0, 0, 0, 1]])) == Q3ClassZx.make([1, 1, 0, 1])


def test_fm1_1_dyadic_sums():
    # x^2 = 1 * 2^1 and x^4 = 1 * 2^2 both land on x^1
    assert fm1_1(IntPoly([0, 0, 1, 0, 1])) == ResPoly(2, [0, 0])
    assert fm1_1(IntPoly([0, 1, 1])) == ResPoly(2)
    assert fm1_1(IntPoly([0, 0, 0, 0, 0, 0, 1])) == ResPoly(2, [0, 0, 1])


def test_preimage_q3_round_trip():
    for t in ([], [1], [0, 1], [1, 0, 1, 1]):
        assert reduce_q3_Zx(preimage_q3_Zx(Q3ClassZx.make(t))) == Q3ClassZx.make(t)


def test_reduce_q1():
    assert reduce_q1_Zx(Mat.zeros(2)) == 0
    with pytest.raises(NumeratorError):
        reduce_q1_Zx(Mat.identity(2))
    assert reduce_q1_Zx(Mat.diag([1, 0])) == 1


def test_reduce_qn_Z():
    assert reduce_qn_Z(0, 9) == QnClassZ(0, 1)
    assert reduce_qn_Z(1, 3).value == 1
    assert reduce_qn_Z(2, 12345).value == 0
    assert reduce_qn_Z(3, Mat([[5]])).value == 1
    assert reduce_qn_Z(4, 9).group == "q0z"


def test_group_operations():
    c = Q3ClassZx.make([1, 0, 1])
    assert q_add(c, c).is_zero()
    a = Q0ClassZx.make(4, [1, 2], [1], [], [1])
    assert q_add(a, a).s == 0
    assert q_equal(q_add(a, q_neg(a)), q_zero("q0zx"))
    assert q_equal(reduce_q0_Zx(Mat.diag([3, 0])), reduce_q0_Zx(Mat.diag([11, 0])))
    with pytest.raises(ValueError):
        q_add(c, a)


def test_class_serialization():
    a = Q0ClassZx.make(3, [1, 2], [1], [0, 1], [1])
    assert a.to_json() == {"group": "q0zx", "s": 3, "t": [1, 2], "u1": [1], "u2": [0, 1], "u3": [1]}
    for cls in (a, Q3ClassZx.make([1]), QnClassZ(0, 5), QnClassZ(3, 1)):
        assert class_from_json(cls.to_json()) == cls
    assert Q3ClassZx.make().to_json() == {"group": "q3zx", "value": []}


def test_tables():
    assert lgroups_table("z") == ["Z_8", "Z_2", "0", "Z_2"]
    assert lgroups_table("zx") == ["A_8⊕A_4[x]⊕A_2[x]³", "A_2", "0", "A_2[x]"]
    assert unil_table() == ["0", "0", "xZ_2[x]", "Z_4[x]⊕Z_2[x]³"]
    with pytest.raises(ValueError):
        lgroups_table("q")
