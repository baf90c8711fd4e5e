"""Arf invariants: classical over Z_2, generalized over Z[x], and linking.

Also the boundary maps from the hyperquadratic groups into forms and
formations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linking import LinkingResolution, SFormation
from .matrix import (
    EpsForm,
    LagrangianWitness,
    Mat,
    SplitForm,
    block,
    half_matrix,
    is_even_matrix,
    is_quad,
    is_symmetric,
    split_coordinates,
    vstack,
)
from .poly import ResPoly, tate_decompose
from .qgroups import (
    X_ZX,
    NumeratorError,
    Q0ClassZx,
    Q3ClassZx,
    XMatrix,
    check_numerator_q0,
    check_numerator_q1,
    reduce_q0_Zx,
    reduce_q3_Zx,
)


class PreconditionError(ValueError):
    pass


# classical Arf invariant over Z_2

Bits = Sequence[int]


def _mask(v: Bits) -> int:
    m = 0
    for i, b in enumerate(v):
        if b & 1:
            m |= 1 << i
    return m


def _bits(m: int, n: int) -> tuple[int, ...]:
    return tuple((m >> i) & 1 for i in range(n))


def _parity(m: int) -> int:
    return bin(m).count("1") & 1


@dataclass(frozen=True)
class GF2Form:
    """q(v) = v^T psi v over Z_2; only psi + psi^T and the diagonal matter."""

    n: int
    psi: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GF2Form":
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("psi must be square")
        return cls(n, tuple(tuple(int(b) & 1 for b in r) for r in rows))

    @classmethod
    def from_mat(cls, m: Mat) -> "GF2Form":
        if not m.is_square() or any(not e.is_constant() for row in m.rows for e in row):
            raise ValueError("expected a square integer matrix")
        return cls.from_rows([[e.constant_term() for e in row] for row in m.rows])

    def row_masks(self) -> list[int]:
        return [_mask(r) for r in self.psi]

    def bilinear_masks(self) -> list[int]:
        """Rows of psi + psi^T as bitmasks."""
        rows = self.row_masks()
        cols = [_mask([self.psi[i][j] for i in range(self.n)]) for j in range(self.n)]
        return [r ^ c for r, c in zip(rows, cols)]

    def q(self, v: Bits) -> int:
        m = _mask(v)
        rows = self.row_masks()
        return sum((m >> i) & 1 and _parity(rows[i] & m) for i in range(self.n)) & 1

    def b(self, v: Bits, w: Bits) -> int:
        mv, mw = _mask(v), _mask(w)
        s = self.bilinear_masks()
        return sum(((mv >> i) & 1) * _parity(s[i] & mw) for i in range(self.n)) & 1


def gf2_rank(rows: list[int]) -> int:
    rows = list(rows)
    rank = 0
    while rows:
        piv = rows.pop()
        if piv:
            rank += 1
            low = piv & -piv
            rows = [r ^ piv if r & low else r for r in rows]
    return rank


def is_nonsingular_gf2(f: GF2Form) -> bool:
    return gf2_rank(f.bilinear_masks()) == f.n


def check_symplectic_pair(f: GF2Form, e: Sequence[Bits], estar: Sequence[Bits]) -> str | None:
    """None if (e, e*) satisfy the basis conditions, else the violated condition."""
    n = f.n
    if n % 2 or len(e) != n // 2 or len(estar) != n // 2:
        return f"need {n // 2} lagrangian and {n // 2} complement vectors"
    for v in list(e) + list(estar):
        if len(v) != n:
            return "vector of the wrong length"
    ell = n // 2
    for i in range(ell):
        for j in range(ell):
            if f.b(e[i], e[j]):
                return "e does not span an isotropic subspace"
            if f.b(estar[i], estar[j]):
                return "e* does not span an isotropic subspace"
            if f.b(estar[i], e[j]) != (i == j):
                return "e* is not dual to e"
    return None


def classical_arf(f: GF2Form, e: Sequence[Bits], estar: Sequence[Bits]) -> int:
    """sum_i q(e_i) q(e*_i) mod 2."""
    why = check_symplectic_pair(f, e, estar)
    if why:
        raise PreconditionError(why)
    return sum(f.q(a) * f.q(b) for a, b in zip(e, estar)) & 1


def _solve_gf2(rows: list[int], rhs: list[int], n: int) -> int | None:
    """A vector v (bitmask) with parity(rows[i] & v) = rhs[i], or None."""
    aug = [(r, b) for r, b in zip(rows, rhs)]
    pivots = []
    for col in range(n):
        bit = 1 << col
        k = next((i for i in range(len(pivots), len(aug)) if aug[i][0] & bit), None)
        if k is None:
            continue
        p = len(pivots)
        aug[p], aug[k] = aug[k], aug[p]
        pr, pb = aug[p]
        for i in range(len(aug)):
            if i != p and aug[i][0] & bit:
                aug[i] = (aug[i][0] ^ pr, aug[i][1] ^ pb)
        pivots.append(col)
    for r, b in aug[len(pivots):]:
        if r == 0 and b:
            return None
    v = 0
    for i, col in enumerate(pivots):
        if aug[i][1]:
            v |= 1 << col
    return v


def symplectic_complete(f: GF2Form, e: Sequence[Bits]) -> list[tuple[int, ...]]:
    """A basis e* with b(e*_i, e*_j) = 0 and b(e*_i, e_j) = delta_ij."""
    n = f.n
    if not is_nonsingular_gf2(f):
        raise PreconditionError("psi + psi^T is singular")
    ell = len(e)
    if 2 * ell != n:
        raise PreconditionError("lagrangian basis has the wrong size")
    s = f.bilinear_masks()
    # b(v, e_j) = parity(v & S e_j), S symmetric
    se = []
    for v in e:
        m = _mask(v)
        se.append(sum(_parity(s[i] & m) << i for i in range(n)))
    if any(_parity(se[i] & _mask(e[j])) for i in range(ell) for j in range(ell)):
        raise PreconditionError("e does not span an isotropic subspace")
    if gf2_rank([_mask(v) for v in e]) != ell:
        raise PreconditionError("e is not linearly independent")
    fs = []
    for i in range(ell):
        v = _solve_gf2(se, [int(i == j) for j in range(ell)], n)
        if v is None:
            raise PreconditionError("no dual vectors: e is not a lagrangian")
        fs.append(v)
    out = []
    for i in range(ell):
        v = fs[i]
        for j in range(i + 1, ell):
            if f.b(_bits(fs[i], n), _bits(fs[j], n)):
                v ^= _mask(e[j])
        out.append(_bits(v, n))
    return out


def find_lagrangian(f: GF2Form) -> list[tuple[int, ...]]:
    """A lagrangian basis of psi + psi^T via symplectic Gram-Schmidt."""
    n = f.n
    if n % 2 or not is_nonsingular_gf2(f):
        raise PreconditionError("no lagrangian: psi + psi^T is singular")
    s = f.bilinear_masks()

    def b(u: int, w: int) -> int:
        return sum(((u >> i) & 1) * _parity(s[i] & w) for i in range(n)) & 1

    rest = [1 << i for i in range(n)]
    lag = []
    while rest:
        v = rest.pop(0)
        k = next((i for i, w in enumerate(rest) if b(v, w)), None)
        if k is None:
            raise PreconditionError("degenerate form")
        w = rest.pop(k)
        lag.append(v)
        # project the rest onto the orthogonal complement of span(v, w)
        rest = [u ^ (v if b(u, w) else 0) ^ (w if b(u, v) else 0) for u in rest]
    return [_bits(v, n) for v in lag]


def arf_gf2(f: GF2Form) -> int:
    e = find_lagrangian(f)
    return classical_arf(f, e, symplectic_complete(f, e))


# generalized Arf invariant over Z[x]


def tate_lift_columns(diag: Sequence) -> Mat:
    """2 x l matrix with column j the {0,1}-lift of tate_decompose(diag[j])."""
    ps, qs = [], []
    for a in diag:
        p, q = tate_decompose(a)
        ps.append(p.lift())
        qs.append(q.lift())
    return Mat([ps, qs]) if diag else Mat.zeros(2, 0)


def generalized_arf_Zx(s: SplitForm) -> Q3ClassZx:
    """Q_3 class of g nu g^T, g the Tate lift of diag(mu)."""
    if s.epsilon != -1:
        raise PreconditionError("generalized Arf invariant needs epsilon = -1")
    g = tate_lift_columns(s.mu.diagonal())
    return reduce_q3_Zx(g * s.nu * g.T)


def generalized_arf_alt(s: SplitForm) -> Q3ClassZx:
    """The other representative g h^T X h g^T, with h the Tate lift of diag(nu)."""
    g = tate_lift_columns(s.mu.diagonal())
    h = tate_lift_columns(s.nu.diagonal())
    return reduce_q3_Zx(g * h.T * X_ZX.matrix() * h * g.T)


def generalized_arf_form(f: EpsForm, w: LagrangianWitness) -> Q3ClassZx:
    return generalized_arf_Zx(split_coordinates(f, w))


# linking Arf invariant over (Z[x], (2)^oo)


def linking_arf_Zx(res: LinkingResolution, mu_values: Sequence[ResPoly] | None = None) -> Q0ClassZx:
    """Q_0 class of f0 phi f0^T with f0 = (p; q) the Tate lifts of mu on U."""
    res.check()
    diag = res.delta.diagonal()
    if mu_values is None:
        mu_values = [ResPoly(2, a.coeffs) for a in diag]
    if len(mu_values) != res.rank:
        raise PreconditionError("one mu value per generator of U is required")
    for i, (mv, a) in enumerate(zip(mu_values, diag)):
        if ResPoly(2, mv.coeffs) != ResPoly(2, a.coeffs):
            raise PreconditionError(f"mu(g_{i}) does not match the diagonal of delta")
    f0 = tate_lift_columns(list(mu_values))
    return linking_arf_with_lift(res, f0)


def linking_arf_with_lift(res: LinkingResolution, f0: Mat) -> Q0ClassZx:
    """Same as linking_arf_Zx with an explicit (not necessarily {0,1}) lift f0."""
    if not is_even_matrix(f0 * res.d):
        raise PreconditionError("f0 d is not divisible by 2")
    try:
        return reduce_q0_Zx(f0 * res.phi * f0.T)
    except NumeratorError as exc:
        raise PreconditionError(f"f0 phi f0^T is not a Q_0 numerator element: {exc}") from exc


# boundary maps


def _x(x: XMatrix | None, r: int) -> Mat:
    xm = (x or X_ZX).matrix()
    if xm.nrows != r:
        raise ValueError(f"input has rank {r} but X has rank {xm.nrows}")
    return xm


def boundary_q3_to_L2(m: Mat, x: XMatrix | None = None) -> EpsForm:
    """M -> ((-1)-quadratic form (M 1; 0 X))."""
    if not is_symmetric(m):
        raise PreconditionError("M is not symmetric")
    r = m.nrows
    xm = _x(x, r)
    return EpsForm(-1, block([[m, Mat.identity(r)], [Mat.zeros(r), xm]]))


def _quarter(h: Mat) -> Mat:
    """A quadratic refinement of h/2 for h in Quad: the symmetric half when
    it is integral, otherwise the upper triangle with halved diagonal."""
    if is_even_matrix(h):
        return half_matrix(h)
    n = h.nrows
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(half_matrix(Mat([[h[i, i]]]))[0, 0])
            else:
                row.append(h[i, j] if i < j else 0)
        rows.append(row)
    return Mat(rows)


def boundary_q1_to_L0(n: Mat, x: XMatrix | None = None) -> EpsForm:
    """N -> (+1)-quadratic form ((N+N^t-2N^tXN)/4, 1-2NX; 0, -2X)."""
    r = n.nrows
    xm = _x(x, r)
    if not check_numerator_q1(n, x or X_ZX):
        raise PreconditionError("N is not a Q_1 numerator element")
    s = n + n.T - (n.T * xm * n).scale(2)
    h = half_matrix(s)
    if not is_quad(h):
        raise PreconditionError("(N+N^t-2N^tXN)/2 is not in Quad")
    top = _quarter(h)
    return EpsForm(1, block([[top, Mat.identity(r) - (n * xm).scale(2)], [Mat.zeros(r), xm.scale(-2)]]))


def boundary_q0_to_formation(m: Mat, x: XMatrix | None = None) -> SFormation:
    """M -> (H_-(A^r); A^r, im((1 - XM; M)))."""
    r = m.nrows
    xm = _x(x, r)
    if not check_numerator_q0(m, x or X_ZX):
        raise PreconditionError("M - MXM is not in Quad")
    g = vstack(Mat.identity(r) - xm * m, m)
    return SFormation(r, vstack(Mat.identity(r), Mat.zeros(r)), g)
