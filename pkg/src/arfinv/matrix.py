"""Matrices over Z[x], epsilon-quadratic forms and lagrangians.

A matrix is a tuple of rows of IntPoly. Integer entries are the constant
polynomials, so the same code serves Z and Z[x].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .poly import ONE, ZERO, IntPoly, as_poly, is_even_poly, poly_divexact


class Mat:
    """Immutable r x c matrix with IntPoly entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, data: Iterable[Iterable], ncols: int | None = None):
        rows = tuple(tuple(as_poly(v) for v in row) for row in data)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        if rows:
            ncols = widths.pop()
        elif ncols is None:
            ncols = 0
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Mat":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "Mat":
        c = r if c is None else c
        return cls._raw(tuple((ZERO,) * c for _ in range(r)), c)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Mat":
        n = len(entries)
        ent = [as_poly(e) for e in entries]
        return cls._raw(
            tuple(tuple(ent[i] if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def from_json(cls, data) -> "Mat":
        """Rows of entries, each entry an int or a coefficient array."""
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix must be a list of rows")
        for row in data:
            for e in row:
                if isinstance(e, bool) or not (
                    isinstance(e, int)
                    or (isinstance(e, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in e))
                ):
                    raise ValueError(f"bad matrix entry {e!r}")
        return cls(data)

    def to_json(self) -> list:
        return [[e.to_list() for e in row] for row in self.rows]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> IntPoly:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ncols, self.rows))

    def __repr__(self) -> str:
        return f"Mat({self.to_json()})"

    def __str__(self) -> str:
        return "(" + "; ".join(" ".join(str(e) for e in row) for row in self.rows) + ")"

    def _check_shape(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_shape(other)
        return Mat._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_shape(other)
        return Mat._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Mat":
        c = as_poly(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def __mul__(self, other) -> "Mat":
        if isinstance(other, (int, IntPoly)):
            return self.scale(other)
        return matmul(self, other)

    def __rmul__(self, other) -> "Mat":
        if isinstance(other, (int, IntPoly)):
            return self.scale(other)
        return NotImplemented

    @property
    def T(self) -> "Mat":
        if not self.nrows:
            return Mat.zeros(self.ncols, 0)
        return Mat._raw(tuple(zip(*self.rows)), self.nrows)

    def col(self, j: int) -> "Mat":
        return Mat._raw(tuple((r[j],) for r in self.rows), 1)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(tuple(tuple(self.rows[i][j] for j in cols) for i in rows), len(cols))

    def blocks(self, r: int, c: int) -> tuple["Mat", "Mat", "Mat", "Mat"]:
        """Split into (top-left, top-right, bottom-left, bottom-right) at (r, c)."""
        top, bot = range(r), range(r, self.nrows)
        left, right = range(c), range(c, self.ncols)
        return (
            self.submatrix(top, left),
            self.submatrix(top, right),
            self.submatrix(bot, left),
            self.submatrix(bot, right),
        )

    def diagonal(self) -> list[IntPoly]:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def max_degree(self) -> int:
        return max((e.degree for row in self.rows for e in row), default=-1)


def matmul(a: Mat, b: Mat) -> Mat:
    if a.ncols != b.nrows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    bt = b.T.rows
    out = []
    for row in a.rows:
        new = []
        for colv in bt:
            acc = ZERO
            for u, v in zip(row, colv):
                if u and v:
                    acc = acc + u * v
            new.append(acc)
        out.append(tuple(new))
    return Mat._raw(tuple(out), b.ncols)


def hstack(*ms: Mat) -> Mat:
    n = ms[0].nrows
    if any(m.nrows != n for m in ms):
        raise ValueError("hstack row mismatch")
    return Mat._raw(tuple(sum((m.rows[i] for m in ms), ()) for i in range(n)), sum(m.ncols for m in ms))


def vstack(*ms: Mat) -> Mat:
    c = ms[0].ncols
    if any(m.ncols != c for m in ms):
        raise ValueError("vstack column mismatch")
    return Mat._raw(sum((m.rows for m in ms), ()), c)


def block(grid: Sequence[Sequence[Mat]]) -> Mat:
    return vstack(*(hstack(*row) for row in grid))


def block_diag(*ms: Mat) -> Mat:
    n = sum(m.nrows for m in ms)
    c = sum(m.ncols for m in ms)
    rows = []
    off = 0
    for m in ms:
        for r in m.rows:
            rows.append((ZERO,) * off + r + (ZERO,) * (c - off - m.ncols))
        off += m.ncols
    return Mat._raw(tuple(rows), c) if n else Mat.zeros(0, c)


def det(m: Mat) -> IntPoly:
    """Determinant by fraction-free (Bareiss) elimination."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return ONE
    a = [list(r) for r in m.rows]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = poly_divexact(piv * a[i][j] - a[i][k] * a[k][j], prev)
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def adjugate(m: Mat) -> Mat:
    n = m.nrows
    if n == 0:
        return m
    if n == 1:
        return Mat([[1]])
    idx = range(n)
    out = []
    for i in idx:
        row = []
        for j in idx:
            # cofactor C_ji: delete row j, column i
            minor = m.submatrix([r for r in idx if r != j], [c for c in idx if c != i])
            c = det(minor)
            row.append(-c if (i + j) % 2 else c)
        out.append(row)
    return Mat(out)


def unit_sign(p: IntPoly) -> int:
    """+1 or -1 if p is a unit of Z[x], else 0."""
    if p.coeffs in ((1,), (-1,)):
        return p.coeffs[0]
    return 0


def is_unimodular(m: Mat) -> bool:
    return m.is_square() and unit_sign(det(m)) != 0


def inverse_unimodular(m: Mat) -> Mat:
    s = unit_sign(det(m))
    if not s:
        raise ValueError("matrix is not invertible over Z[x]")
    adj = adjugate(m)
    return adj if s == 1 else -adj


def is_symmetric(m: Mat) -> bool:
    return m.is_square() and m == m.T


def is_quad(m: Mat) -> bool:
    """Symmetric with every diagonal entry in 2Z[x]."""
    return is_symmetric(m) and all(is_even_poly(e) for e in m.diagonal())


def is_even_matrix(m: Mat) -> bool:
    return all(is_even_poly(e) for row in m.rows for e in row)


def half_matrix(m: Mat) -> Mat:
    if not is_even_matrix(m):
        raise ValueError("matrix has an odd entry")
    return Mat._raw(tuple(tuple(IntPoly([v // 2 for v in e.coeffs]) for e in r) for r in m.rows), m.ncols)


def in_eps_denominator(m: Mat, eps: int) -> bool:
    """Whether m = chi - eps*chi^T for some square chi (commutative ring, trivial involution).

    For eps = -1 this means symmetric with even diagonal; for eps = +1 it
    means skew with zero diagonal.
    """
    if not m.is_square():
        return False
    if eps == -1:
        return is_quad(m)
    return m == -m.T and all(not e for e in m.diagonal())


@dataclass(frozen=True)
class EpsForm:
    epsilon: int
    psi: Mat

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if not self.psi.is_square():
            raise ValueError("psi must be square")

    @property
    def dim(self) -> int:
        return self.psi.nrows

    def to_json(self) -> dict:
        return {"epsilon": self.epsilon, "psi": self.psi.to_json()}

    @classmethod
    def from_json(cls, data) -> "EpsForm":
        return cls(int(data["epsilon"]), Mat.from_json(data["psi"]))


@dataclass(frozen=True)
class LagrangianWitness:
    inclusion: Mat
    complement: Mat

    def to_json(self) -> dict:
        return {"inclusion": self.inclusion.to_json(), "complement": self.complement.to_json()}

    @classmethod
    def from_json(cls, data) -> "LagrangianWitness":
        return cls(Mat.from_json(data["inclusion"]), Mat.from_json(data["complement"]))

    @classmethod
    def standard(cls, ell: int) -> "LagrangianWitness":
        i = Mat.identity(ell)
        z = Mat.zeros(ell)
        return cls(vstack(i, z), vstack(z, i))

    def basis(self) -> Mat:
        return hstack(self.inclusion, self.complement)


@dataclass(frozen=True)
class SplitForm:
    """The form (mu 1; 0 nu) on L + L*."""

    epsilon: int
    mu: Mat
    nu: Mat

    def __post_init__(self):
        e = self.epsilon
        for name, m in (("mu", self.mu), ("nu", self.nu)):
            if not (m + m.T.scale(e)).is_zero():
                raise ValueError(f"{name} + eps*{name}^T must vanish")

    @property
    def rank(self) -> int:
        return self.mu.nrows

    def to_form(self) -> EpsForm:
        ell = self.rank
        return EpsForm(self.epsilon, block([[self.mu, Mat.identity(ell)], [Mat.zeros(ell), self.nu]]))


def symmetrize(f: EpsForm) -> Mat:
    return f.psi + f.psi.T.scale(f.epsilon)


def is_nonsingular(f: EpsForm) -> bool:
    return unit_sign(det(symmetrize(f))) != 0


def _check_witness_shape(f: EpsForm, w: LagrangianWitness) -> int:
    n = f.dim
    j, k = w.inclusion, w.complement
    if j.nrows != n or k.nrows != n or j.ncols != k.ncols or 2 * j.ncols != n:
        raise ValueError(
            f"witness shape {j.shape}/{k.shape} does not fit a form of dimension {n}"
        )
    return j.ncols


def verify_lagrangian(f: EpsForm, w: LagrangianWitness) -> bool:
    """Symmetrization-lagrangian test: J^T (psi + eps psi^T) J = 0 and [J|J'] unimodular."""
    _check_witness_shape(f, w)
    j = w.inclusion
    if not (j.T * symmetrize(f) * j).is_zero():
        return False
    return is_unimodular(w.basis())


def verify_quadratic_lagrangian(f: EpsForm, w: LagrangianWitness) -> bool:
    """The stronger test that also asks psi restricted to L to lie in {chi - eps chi^T}."""
    if not verify_lagrangian(f, w):
        return False
    j = w.inclusion
    return in_eps_denominator(j.T * f.psi * j, f.epsilon)


def split_transform(f: EpsForm, w: LagrangianWitness) -> tuple[SplitForm, Mat]:
    """Split coordinates together with the basis change realising them.

    Returns (s, T) where the columns of T are the new basis: the first half
    spans the witnessed lagrangian L, and T^T psi T differs from
    (mu 1; 0 nu) by some chi - eps chi^T.
    """
    if not is_nonsingular(f):
        raise ValueError("form is singular")
    ell = _check_witness_shape(f, w)
    if not verify_lagrangian(f, w):
        raise ValueError("witness does not span a lagrangian with unimodular complement")
    e = f.epsilon
    p = w.basis()
    p11, p12, p21, p22 = (p.T * f.psi * p).blocks(ell, ell)
    lam = p12 + p21.T.scale(e)
    mu = p11
    b = inverse_unimodular(lam)  # raises if lambda is not invertible
    # any A with A^T + eps A = -R works; R = 0 (so A = 0) when the block is already split
    r = b.T * (p22 + p22.T.scale(e)) * b
    a = _solve_eps_transpose(r, e)
    nu = a.T * mu * a + a.T + b.T * p22 * b
    q = block([[Mat.identity(ell), a], [Mat.zeros(ell), b]])
    return SplitForm(e, mu, nu), p * q


def _solve_eps_transpose(r: Mat, eps: int) -> Mat:
    """A with A^T + eps A = -R, for R with R^T = eps R (and even diagonal if eps = 1)."""
    n = r.nrows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i < j:
                row.append(r[i, j] * -eps)
            elif i == j:
                row.append(IntPoly([v // 2 for v in r[i, i].coeffs]) * -eps)
            else:
                row.append(ZERO)
        rows.append(row)
    return Mat(rows)


def split_coordinates(f: EpsForm, w: LagrangianWitness) -> SplitForm:
    return split_transform(f, w)[0]


def is_equivalent(f: EpsForm, g: EpsForm, t: Mat | None = None) -> bool:
    """Whether T^T psi_f T and psi_g represent the same eps-quadratic form."""
    if f.epsilon != g.epsilon or f.dim != g.dim:
        return False
    lhs = f.psi if t is None else t.T * f.psi * t
    return in_eps_denominator(lhs - g.psi, f.epsilon)


def hyperbolic(ell: int, eps: int) -> EpsForm:
    if ell < 0:
        raise ValueError("rank must be non-negative")
    z = Mat.zeros(ell)
    return EpsForm(eps, block([[z, Mat.identity(ell)], [z, z]]) if ell else Mat.zeros(0))


def direct_sum(f: EpsForm, g: EpsForm) -> EpsForm:
    if f.epsilon != g.epsilon:
        raise ValueError("cannot add forms of different symmetry")
    return EpsForm(f.epsilon, block_diag(f.psi, g.psi))


def direct_sum_witness(v: LagrangianWitness, w: LagrangianWitness) -> LagrangianWitness:
    return LagrangianWitness(block_diag(v.inclusion, w.inclusion), block_diag(v.complement, w.complement))
