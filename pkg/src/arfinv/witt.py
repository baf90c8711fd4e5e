"""Witt-group invariants of integral forms: signature, signature mod 8, Arf in L_2(Z)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .arf import GF2Form, PreconditionError, classical_arf, symplectic_complete
from .matrix import EpsForm, LagrangianWitness, Mat, det, verify_lagrangian

IntMatrix = Sequence[Sequence[int]]


def as_int_matrix(f) -> list[list[int]]:
    """Accept a Mat with constant entries or nested int lists."""
    if isinstance(f, Mat):
        if any(not e.is_constant() for row in f.rows for e in row):
            raise ValueError("expected an integer matrix")
        return [[e.constant_term() for e in row] for row in f.rows]
    return [[int(v) for v in row] for row in f]


def _check_symmetric(a: list[list[int]]) -> None:
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
        raise ValueError("matrix is not symmetric")


def signature(f) -> int:
    """#positive - #negative after congruence diagonalization over Q."""
    a = as_int_matrix(f)
    _check_symmetric(a)
    m = [[Fraction(v) for v in row] for row in a]
    sig = 0
    while m:
        n = len(m)
        k = next((i for i in range(n) if m[i][i] != 0), None)
        if k is not None:
            p = m[k][k]
            sig += 1 if p > 0 else -1
            rest = [i for i in range(n) if i != k]
            m = [[m[i][j] - m[i][k] * m[k][j] / p for j in rest] for i in rest]
            continue
        # zero diagonal: pivot on a hyperbolic 2x2 block (0 c; c 0), signature 0
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if m[i][j] != 0), None)
        if pair is None:
            raise ValueError("singular form")
        i0, j0 = pair
        c = m[i0][j0]
        rest = [i for i in range(n) if i not in pair]
        # Schur complement with inverse (0 1/c; 1/c 0)
        m = [
            [m[i][j] - (m[i][i0] * m[j0][j] + m[i][j0] * m[i0][j]) / c for j in rest]
            for i in rest
        ]
    return sig


def _gf2_solve(a: list[list[int]], b: list[int]) -> list[int]:
    n = len(a)
    rows = [[v & 1 for v in r] + [bv & 1] for r, bv in zip(a, b)]
    piv_cols = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, n) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(not any(row[:n]) and row[n] for row in rows):
        raise PreconditionError("mod-2 system is inconsistent")
    v = [0] * n
    for i, c in enumerate(piv_cols):
        v[c] = rows[i][n]
    return v


def characteristic_element(f) -> list[int]:
    """v in {0,1}^n with phi v = diag(phi) mod 2."""
    a = as_int_matrix(f)
    _check_symmetric(a)
    if det(Mat(a)).constant_term() % 2 == 0:
        raise PreconditionError("determinant is even")
    return _gf2_solve(a, [a[i][i] for i in range(len(a))])


def signature_mod8(f) -> int:
    """phi(v, v) mod 8 for a characteristic element v."""
    a = as_int_matrix(f)
    _check_symmetric(a)
    if det(Mat(a)).constant_term() not in (1, -1):
        raise PreconditionError("form is not unimodular")
    v = characteristic_element(a)
    n = len(a)
    return sum(v[i] * a[i][j] * v[j] for i in range(n) for j in range(n)) % 8


def e8() -> list[list[int]]:
    """Cartan matrix of E_8: even, unimodular, positive definite."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]
    m = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in edges:
        m[i][j] = m[j][i] = -1
    return m


def arf_L2(f: EpsForm, w: LagrangianWitness) -> int:
    """Arf invariant of the mod-2 reduction of a (-1)-quadratic form over Z."""
    if f.epsilon != -1:
        raise PreconditionError("arf_L2 needs epsilon = -1")
    if not verify_lagrangian(f, w):
        raise PreconditionError("witness is not a lagrangian")
    g = GF2Form.from_mat(f.psi)
    e = [tuple(v & 1 for v in col) for col in zip(*as_int_matrix(w.inclusion))]
    return classical_arf(g, e, symplectic_complete(g, e))
