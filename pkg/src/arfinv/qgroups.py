"""Normal forms for the twisted quadratic Q-groups over Z and Z[x].

Over Z[x] the universal chain bundle is presented by X = diag(1, x) and

    Q_0 = {M in Sym_2 : M - MXM in Quad_2} / (4 Quad_2 + {2(N+N^t) - 4N^t X N})
        = Z_8 + Z_4[x] + Z_2[x]^3
    Q_1 = Z_2,  Q_2 = 0,
    Q_3 = Sym_2 / (Quad_2 + {L - LXL}) = Z_2[x].

Over Z (X = (1)) the groups are Z_8, Z_2, 0, Z_2.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import Mat, is_even_matrix, is_quad, is_symmetric
from .poly import ZERO, IntPoly, ResPoly, X as XPOLY, half, is_even_poly, poly_mul, poly_sub


class NumeratorError(ValueError):
    """Input is not in the numerator subgroup of the requested Q-group."""


@dataclass(frozen=True)
class XMatrix:
    ring: str  # "z" or "zx"

    def __post_init__(self):
        if self.ring not in ("z", "zx"):
            raise ValueError(f"unknown ring {self.ring!r}")

    @property
    def rank(self) -> int:
        return 1 if self.ring == "z" else 2

    def matrix(self) -> Mat:
        return Mat([[1]]) if self.ring == "z" else Mat.diag([1, XPOLY])


X_Z = XMatrix("z")
X_ZX = XMatrix("zx")


@dataclass(frozen=True)
class Q0ClassZx:
    s: int
    t: ResPoly
    u1: ResPoly
    u2: ResPoly
    u3: ResPoly

    group = "q0zx"

    def __post_init__(self):
        object.__setattr__(self, "s", self.s % 8)
        if self.t.modulus != 4 or any(u.modulus != 2 for u in (self.u1, self.u2, self.u3)):
            raise ValueError("Q0ClassZx components must be (Z_8, Z_4[x], Z_2[x]^3)")

    @classmethod
    def make(cls, s, t=(), u1=(), u2=(), u3=()) -> "Q0ClassZx":
        return cls(s, ResPoly(4, t), ResPoly(2, u1), ResPoly(2, u2), ResPoly(2, u3))

    def astuple(self) -> tuple:
        return (self.s, self.t.coeffs, self.u1.coeffs, self.u2.coeffs, self.u3.coeffs)

    def is_zero(self) -> bool:
        return not (self.s or self.t or self.u1 or self.u2 or self.u3)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "s": self.s,
            "t": self.t.to_list(),
            "u1": self.u1.to_list(),
            "u2": self.u2.to_list(),
            "u3": self.u3.to_list(),
        }


@dataclass(frozen=True)
class Q3ClassZx:
    value: ResPoly

    group = "q3zx"

    def __post_init__(self):
        if self.value.modulus != 2:
            raise ValueError("Q3ClassZx value must be mod 2")

    @classmethod
    def make(cls, coeffs=()) -> "Q3ClassZx":
        return cls(ResPoly(2, coeffs))

    def is_zero(self) -> bool:
        return not self.value

    def to_json(self) -> dict:
        return {"group": self.group, "value": self.value.to_list()}


_Z_MOD = {0: 8, 1: 2, 2: 1, 3: 2}


@dataclass(frozen=True)
class QnClassZ:
    n: int
    value: int

    def __post_init__(self):
        n = self.n % 4
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "value", self.value % _Z_MOD[n])

    @property
    def group(self) -> str:
        return f"q{self.n}z"

    @property
    def modulus(self) -> int:
        return _Z_MOD[self.n]

    def is_zero(self) -> bool:
        return self.value == 0

    def to_json(self) -> dict:
        return {"group": self.group, "value": self.value}


def class_from_json(data: dict):
    g = data.get("group")
    if g == "q0zx":
        return Q0ClassZx.make(data["s"], data["t"], data["u1"], data["u2"], data["u3"])
    if g == "q3zx":
        return Q3ClassZx.make(data["value"])
    if g in ("q0z", "q1z", "q2z", "q3z"):
        return QnClassZ(int(g[1]), data["value"])
    raise ValueError(f"unknown group {g!r}")


# numerator predicates


def check_numerator_q0(m: Mat, x: XMatrix = X_ZX) -> bool:
    if not is_symmetric(m) or m.nrows != x.rank:
        return False
    return is_quad(m - m * x.matrix() * m)


def check_numerator_q1(n: Mat, x: XMatrix = X_ZX) -> bool:
    if n.shape != (x.rank, x.rank):
        return False
    s = n + n.T
    if not is_even_matrix(s):
        return False
    h = Mat([[half(e) for e in row] for row in s.rows])
    return is_quad(h - n.T * x.matrix() * n)


# coefficient isomorphisms of the rank-one pieces


def _dyadic_sum(c: tuple[int, ...], i: int, shift: int) -> int:
    """sum_j c[(2i+1) 2^j - shift] over the indices present in c."""
    total = 0
    k = 2 * i + 1
    while k - shift < len(c):
        total += c[k - shift]
        k *= 2
    return total


def _need_even(c: tuple[int, ...], start: int, what: str) -> None:
    for k in range(start, len(c)):
        if c[k] % 2:
            raise NumeratorError(f"{what}: coefficient of x^{k} is odd")


def f01(a: IntPoly) -> tuple[int, ResPoly, ResPoly]:
    """Q_0(C(1)) -> Z_8 + Z_4[x] + Z_2[x]; needs a - a_0 even."""
    c = a.coeffs
    _need_even(c, 1, "f_0(1)")
    s = c[0] % 8 if c else 0
    top = (len(c) - 1) // 2 + 1 if c else 0
    d = [(_dyadic_sum(c, i, 0) // 2) % 4 for i in range(top)]
    u2 = [(c[2 * k + 2] // 2) % 2 for k in range(max(0, (len(c) - 2 + 1) // 2))]
    return s, ResPoly(4, d), ResPoly(2, u2)


def f0x(c: IntPoly) -> tuple[ResPoly, ResPoly]:
    """Q_0(C(x)) -> Z_4[x] + Z_2[x]; needs c even."""
    cc = c.coeffs
    _need_even(cc, 0, "f_0(x)")
    top = len(cc) // 2 + 1
    e = [(_dyadic_sum(cc, i, 1) // 2) % 4 for i in range(top)]
    u3 = [(cc[2 * k + 1] // 2) % 2 for k in range(len(cc) // 2)]
    return ResPoly(4, e), ResPoly(2, u3)


def fm1_1(a: IntPoly) -> ResPoly:
    """Q_{-1}(C(1)) -> Z_2[x]: a_0 + sum_i (sum_j a_{(2i+1)2^j}) x^{i+1}."""
    c = a.coeffs
    if not c:
        return ResPoly(2)
    out = [c[0]]
    for i in range((len(c) - 1 + 1) // 2):
        out.append(_dyadic_sum(c, i, 0))
    return ResPoly(2, out)


def fm1_x(a: IntPoly) -> ResPoly:
    """Q_{-1}(C(x)) -> Z_2[x]: sum_i (sum_j a_{(2i+1)2^j - 1}) x^i."""
    c = a.coeffs
    return ResPoly(2, [_dyadic_sum(c, i, 1) for i in range(len(c) // 2 + 1)])


def combine_q0(s: int, d: ResPoly, u2: ResPoly, e: ResPoly, u3: ResPoly) -> Q0ClassZx:
    """A_8 + coker(2 Delta) + A_2[x]^2 in normal form, [d, e] -> (d - e, d mod 2)."""
    return Q0ClassZx(s, d - e, ResPoly(2, d.coeffs), u2, u3)


# reductions


def _entries_2x2(m: Mat) -> tuple[IntPoly, IntPoly, IntPoly]:
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {m.shape}")
    if not is_symmetric(m):
        raise NumeratorError("matrix is not symmetric")
    return m[0, 0], m[0, 1], m[1, 1]


def diagonalize_q0_Zx(m: Mat) -> tuple[IntPoly, IntPoly]:
    """(a, c - b^2), the diagonal representative of a Q_0 numerator element."""
    a, b, c = _entries_2x2(m)
    if not is_even_poly(b):
        raise NumeratorError("off-diagonal entry is odd")
    return a, poly_sub(c, poly_mul(b, b))


def reduce_q0_Zx(m: Mat) -> Q0ClassZx:
    if not check_numerator_q0(m, X_ZX):
        raise NumeratorError("M - MXM is not in Quad_2: not a Q_0 numerator element")
    a, cp = diagonalize_q0_Zx(m)
    s, d, u2 = f01(a)
    e, u3 = f0x(cp)
    return combine_q0(s, d, u2, e, u3)


def reduce_q3_Zx(m: Mat) -> Q3ClassZx:
    a, _, c = _entries_2x2(m)
    return Q3ClassZx(fm1_1(a + poly_mul(c, XPOLY)))


def reduce_q1_Zx(n: Mat) -> int:
    if n.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got {n.shape}")
    if not check_numerator_q1(n, X_ZX):
        raise NumeratorError("N is not a Q_1 numerator element")
    return n[0, 0].constant_term() % 2


def reduce_qn_Z(n: int, a) -> QnClassZ:
    """Q_n over Z with X = (1); `a` is an int or a 1x1 matrix."""
    if isinstance(a, Mat):
        if a.shape != (1, 1) or not a[0, 0].is_constant():
            raise ValueError("expected a 1x1 integer matrix")
        a = a[0, 0].constant_term()
    return QnClassZ(n, 0 if n % 4 == 2 else int(a))


# group operations on normal forms


def _same_group(p, q) -> None:
    if type(p) is not type(q) or p.group != q.group:
        raise ValueError(f"group mismatch: {p.group} vs {q.group}")


def q_equal(p, q) -> bool:
    _same_group(p, q)
    return p == q


def q_add(p, q):
    _same_group(p, q)
    if isinstance(p, Q0ClassZx):
        return Q0ClassZx(p.s + q.s, p.t + q.t, p.u1 + q.u1, p.u2 + q.u2, p.u3 + q.u3)
    if isinstance(p, Q3ClassZx):
        return Q3ClassZx(p.value + q.value)
    return QnClassZ(p.n, p.value + q.value)


def q_neg(p):
    if isinstance(p, Q0ClassZx):
        return Q0ClassZx(-p.s, -p.t, p.u1, p.u2, p.u3)
    if isinstance(p, Q3ClassZx):
        return p
    return QnClassZ(p.n, -p.value)


def q_zero(group: str):
    if group == "q0zx":
        return Q0ClassZx.make(0)
    if group == "q3zx":
        return Q3ClassZx.make()
    return QnClassZ(int(group[1]), 0)


# explicit preimages


def preimage_f01_literal(s: int, d: ResPoly, u2: ResPoly) -> IntPoly:
    """a_0 + 2 sum d_i x^{2i+1} + 2 sum u2_i x^{2i+2}, the naive interleaved preimage.

    This is a true preimage only when u2 = 0: even-index coefficients also
    feed the Z_4[x] sums (for example f01(2x^2) = (0, 1, 1)).
    """
    n = max(2 * len(d), 2 * len(u2) + 1) + 1
    c = [0] * n
    c[0] = s % 8
    for i, v in enumerate(d.coeffs):
        c[2 * i + 1] = 2 * v
    for i, v in enumerate(u2.coeffs):
        c[2 * i + 2] = 2 * v
    return IntPoly(c)


def preimage_f01(s: int, d: ResPoly, u2: ResPoly) -> IntPoly:
    """Exact inverse of f01: the literal formula with the odd-index terms corrected."""
    c = list(preimage_f01_literal(s, ResPoly(4), u2).coeffs)
    c += [0] * (2 * len(d) + 1 - len(c))
    for i in range(max(len(d), (len(c) - 1 + 1) // 2)):
        extra = _dyadic_sum(tuple(c), i, 0) // 2  # contributions of the even indices
        v = (d[i] - extra) % 4
        while len(c) <= 2 * i + 1:
            c.append(0)
        c[2 * i + 1] = 2 * v
    return IntPoly(c)


def preimage_f0x_literal(e: ResPoly, u3: ResPoly) -> IntPoly:
    """2 sum e_i x^{2i} + 2 sum u3_i x^{2i+1}, the naive preimage; exact only when u3 = 0."""
    n = max(2 * len(e) - 1, 2 * len(u3)) + 1
    c = [0] * n
    for i, v in enumerate(e.coeffs):
        c[2 * i] = 2 * v
    for i, v in enumerate(u3.coeffs):
        c[2 * i + 1] = 2 * v
    return IntPoly(c)


def preimage_f0x(e: ResPoly, u3: ResPoly) -> IntPoly:
    """Exact inverse of f0x."""
    c = list(preimage_f0x_literal(ResPoly(4), u3).coeffs)
    top = max(len(e), len(c) // 2 + 1)
    c += [0] * (2 * top - len(c))
    for i in range(top):
        c[2 * i] = 0
        extra = _dyadic_sum(tuple(c), i, 1) // 2
        c[2 * i] = 2 * ((e[i] - extra) % 4)
    return IntPoly(c)


def preimage_fm1_1(target: ResPoly) -> IntPoly:
    """c_0 + sum c_{i+1} x^{2i+1}, a preimage under fm1_1."""
    t = target.coeffs
    if not t:
        return ZERO
    c = [0] * (2 * len(t) - 2 + 1)
    c[0] = t[0]
    for i in range(1, len(t)):
        c[2 * i - 1] = t[i]
    return IntPoly(c)


def preimage_q0_Zx(cls: Q0ClassZx, literal: bool = False) -> Mat:
    """A diagonal numerator element reducing to `cls`.

    Uses d = u1 (lifted to {0,1}) and e = d - t for the coker(2 Delta) part.
    """
    d = ResPoly(4, cls.u1.coeffs)
    e = d - cls.t
    if literal:
        a = preimage_f01_literal(cls.s, d, cls.u2)
        c = preimage_f0x_literal(e, cls.u3)
    else:
        a = preimage_f01(cls.s, d, cls.u2)
        c = preimage_f0x(e, cls.u3)
    return Mat.diag([a, c])


def preimage_q3_Zx(cls: Q3ClassZx) -> Mat:
    return Mat.diag([preimage_fm1_1(cls.value), 0])


# group tables

LGROUPS = {
    "z": ["Z_8", "Z_2", "0", "Z_2"],
    "zx": ["A_8⊕A_4[x]⊕A_2[x]³", "A_2", "0", "A_2[x]"],
}

UNIL_Z = ["0", "0", "xZ_2[x]", "Z_4[x]⊕Z_2[x]³"]

UNIL_SPLITTING = "UNil_3(A) ≅ Q_0(B^{A[x]},β^{A[x]})/A_8"


def lgroups_table(ring: str) -> list[str]:
    """Hyperquadratic L-groups L^n for n = 0, 1, 2, 3 (mod 4)."""
    key = ring.lower()
    if key not in LGROUPS:
        raise ValueError(f"unknown ring {ring!r}")
    return list(LGROUPS[key])


def unil_table() -> list[str]:
    """UNil_n(Z) for n = 0, 1, 2, 3 (mod 4)."""
    return list(UNIL_Z)
