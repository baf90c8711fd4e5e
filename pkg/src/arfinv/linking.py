"""Quadratic linking forms over (Z[x], (2)^oo) presented by resolutions.

A resolution (d, delta, phi) presents

    T = coker((0 d^T; d phi) : B_1 + B^0 -> B^1 + B_0)

and an element of T is a pair (x1, x0) with x1 in B^1 and x0 in B_0. The
pairing and its quadratic refinement are

    lambda(x, y) = -x1^T d^-1 phi d^-T y1 + x1^T d^-1 y0 + x0^T d^-T y1   mod Z[x]
    mu(x)        = lambda(x, x) computed exactly, minus x0^T delta x0     mod 2Z[x]

The submodule U of vectors (0, x0) is the lagrangian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .matrix import (
    Mat,
    adjugate,
    block,
    det,
    hstack,
    in_eps_denominator,
    inverse_unimodular,
    is_even_matrix,
    is_quad,
    is_symmetric,
    vstack,
)
from .poly import ZERO, IntPoly, as_poly
from .qgroups import X_ZX, XMatrix, check_numerator_q0


class ResolutionError(ValueError):
    pass


def _two_power(p: IntPoly) -> tuple[int, int]:
    """(sign, m) with p = sign * 2^m, or raise."""
    c = p.coeffs
    if len(c) != 1:
        raise ResolutionError(f"det(d) = {p} is not +-2^m")
    v = c[0]
    s = 1 if v > 0 else -1
    v = abs(v)
    if v & (v - 1):
        raise ResolutionError(f"det(d) = {p} is not +-2^m")
    return s, v.bit_length() - 1


class Dyadic:
    """num / 2^k modulo m Z[x] with m in {1, 2}, in canonical form."""

    __slots__ = ("num", "k", "m")

    def __init__(self, num, k: int = 0, m: int = 1):
        if m not in (1, 2):
            raise ValueError("modulus must be 1 or 2")
        num = as_poly(num)
        mod = m << k
        c = [v % mod for v in num.coeffs]
        while k > 0 and all(v % 2 == 0 for v in c):
            c = [v // 2 for v in c]
            k -= 1
        object.__setattr__(self, "num", IntPoly(c))
        object.__setattr__(self, "k", k if any(c) else 0)
        object.__setattr__(self, "m", m)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        return (self.num, self.k, self.m) == (other.num, other.k, other.m)

    def __hash__(self) -> int:
        return hash((self.num, self.k, self.m))

    def __repr__(self) -> str:
        return f"Dyadic({self.num.to_list()}, {self.k}, m={self.m})"

    def __str__(self) -> str:
        mod = "Z[x]" if self.m == 1 else "2Z[x]"
        return f"({self.num})/{1 << self.k} mod {mod}"

    def __bool__(self) -> bool:
        return bool(self.num)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        if self.m != other.m:
            raise ValueError("cannot add values with different moduli")
        k = max(self.k, other.k)
        return Dyadic(self.num * (1 << (k - self.k)) + other.num * (1 << (k - other.k)), k, self.m)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.k, self.m)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        return self + (-other)

    def doubled(self) -> "Dyadic":
        """2v mod 2Z[x] for v mod Z[x]; well defined."""
        if self.m != 1:
            raise ValueError("doubled() expects a value mod Z[x]")
        if self.k == 0:
            return Dyadic(0, 0, 2)
        return Dyadic(self.num, self.k - 1, 2)

    def mod_one(self) -> "Dyadic":
        return Dyadic(self.num, self.k, 1)

    def to_json(self) -> dict:
        return {"num": self.num.to_list(), "den_exp": self.k, "mod": self.m}


@dataclass(frozen=True)
class HalfIntMat:
    """numerator / 2^denom_exp over Z[1/2][x], in lowest terms."""

    numerator: Mat
    denom_exp: int

    def __post_init__(self):
        num, k = self.numerator, self.denom_exp
        if k < 0:
            raise ValueError("denominator exponent must be non-negative")
        while k > 0 and is_even_matrix(num):
            num = Mat([[IntPoly([v // 2 for v in e.coeffs]) for e in row] for row in num.rows])
            k -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denom_exp", k)

    def __matmul__(self, other: "HalfIntMat") -> "HalfIntMat":
        return HalfIntMat(self.numerator * other.numerator, self.denom_exp + other.denom_exp)

    @property
    def T(self) -> "HalfIntMat":
        return HalfIntMat(self.numerator.T, self.denom_exp)

    def is_integral(self) -> bool:
        return self.denom_exp == 0


def dyadic_inverse(d: Mat) -> HalfIntMat:
    """d^-1 for det(d) = +-2^m."""
    s, m = _two_power(det(d))
    adj = adjugate(d)
    return HalfIntMat(adj if s > 0 else -adj, m)


@dataclass(frozen=True)
class LinkingResolution:
    d: Mat
    delta: Mat
    phi: Mat

    def __post_init__(self):
        u = self.d.nrows
        for name in ("d", "delta", "phi"):
            if getattr(self, name).shape != (u, u):
                raise ResolutionError(f"{name} must be {u}x{u}")

    @property
    def rank(self) -> int:
        return self.d.nrows

    def check(self) -> None:
        """Raise ResolutionError naming the first violated invariant."""
        _two_power(det(self.d))
        if not is_symmetric(self.delta):
            raise ResolutionError("delta is not symmetric")
        if not is_symmetric(self.phi):
            raise ResolutionError("phi is not symmetric")
        if not is_quad(self.d.T * self.delta * self.d):
            raise ResolutionError("d^T delta d is not in Quad")
        if not is_quad(self.phi - self.phi * self.delta * self.phi):
            raise ResolutionError("phi - phi delta phi is not in Quad")

    def inverse(self) -> HalfIntMat:
        return dyadic_inverse(self.d)

    def presentation(self) -> Mat:
        """(0 d^T; d phi), whose cokernel is T."""
        u = self.rank
        return block([[Mat.zeros(u), self.d.T], [self.d, self.phi]])

    def to_json(self) -> dict:
        return {"d": self.d.to_json(), "delta": self.delta.to_json(), "phi": self.phi.to_json()}

    @classmethod
    def from_json(cls, data) -> "LinkingResolution":
        return cls(Mat.from_json(data["d"]), Mat.from_json(data["delta"]), Mat.from_json(data["phi"]))


def direct_sum_resolution(r: LinkingResolution, s: LinkingResolution) -> LinkingResolution:
    from .matrix import block_diag

    return LinkingResolution(block_diag(r.d, s.d), block_diag(r.delta, s.delta), block_diag(r.phi, s.phi))


Vector = Sequence  # list of IntPoly-coercible entries


def _vec(v: Vector, u: int) -> Mat:
    if len(v) != u:
        raise ValueError(f"vector of length {len(v)}, expected {u}")
    return Mat([[e] for e in v], 1)


def _split(xv, u: int) -> tuple[Mat, Mat]:
    x1, x0 = xv
    return _vec(x1, u), _vec(x0, u)


def _exact_lambda(res: LinkingResolution, xv, yv) -> tuple[IntPoly, int]:
    """The rational value of the lambda formula, as (numerator, exponent)."""
    u = res.rank
    x1, x0 = _split(xv, u)
    y1, y0 = _split(yv, u)
    inv = res.inverse()
    a, k = inv.numerator, inv.denom_exp
    t1 = (x1.T * a * res.phi * a.T * y1)[0, 0]
    t2 = (x1.T * a * y0)[0, 0]
    t3 = (x0.T * a.T * y1)[0, 0]
    num = -t1 + (t2 + t3) * (1 << k)
    return num, 2 * k


def eval_lambda(res: LinkingResolution, xv, yv) -> Dyadic:
    num, k = _exact_lambda(res, xv, yv)
    return Dyadic(num, k, 1)


def eval_mu(res: LinkingResolution, xv) -> Dyadic:
    num, k = _exact_lambda(res, xv, xv)
    x0 = _vec(xv[1], res.rank)
    q = (x0.T * res.delta * x0)[0, 0]
    return Dyadic(num - q * (1 << k), k, 2)


def lambda_matrix(res: LinkingResolution) -> list[list[Dyadic]]:
    """lambda on the generators h_1..h_u, g_1..g_u (x1 basis then x0 basis)."""
    u = res.rank
    gens = []
    for i in range(u):
        e = [ZERO] * u
        e[i] = IntPoly([1])
        gens.append((e, [ZERO] * u))
    for i in range(u):
        e = [ZERO] * u
        e[i] = IntPoly([1])
        gens.append(([ZERO] * u, e))
    return [[eval_lambda(res, a, b) for b in gens] for a in gens]


# formations


@dataclass(frozen=True)
class SFormation:
    """(H_-(A^n); F, G) with F and G given by n columns in A^n + A^n."""

    rank: int
    F_inclusion: Mat
    G_inclusion: Mat

    def check(self, require_s: bool = True) -> None:
        """Lagrangian conditions, and S^-1 F + S^-1 G = S^-1 Q when require_s."""
        n = self.rank
        for name in ("F_inclusion", "G_inclusion"):
            if getattr(self, name).shape != (2 * n, n):
                raise ResolutionError(f"{name} must be {2 * n}x{n}")
        for name in ("F_inclusion", "G_inclusion"):
            g = getattr(self, name)
            gam, mu = g.submatrix(range(n), range(n)), g.submatrix(range(n, 2 * n), range(n))
            # psi = (0 1; 0 0) restricted to the span, up to chi + chi^T
            if not in_eps_denominator(gam.T * mu, -1):
                raise ResolutionError(f"{name} does not span a quadratic lagrangian")
        if require_s:
            _two_power(det(hstack(self.F_inclusion, self.G_inclusion)))

    def to_json(self) -> dict:
        return {"rank": self.rank, "F": self.F_inclusion.to_json(), "G": self.G_inclusion.to_json()}


def _x_matrix(r: int, x: XMatrix | None) -> Mat:
    if x is None:
        x = X_ZX
    xm = x.matrix()
    if xm.nrows != r:
        raise ValueError(f"M has rank {r} but X has rank {xm.nrows}")
    return xm


def _standard_F(n: int) -> Mat:
    return vstack(Mat.identity(n), Mat.zeros(n))


def canonical_formation(m: Mat, x: XMatrix | None = None) -> SFormation:
    """G spanned by ((I 0; -2X I-XM); (0 2I; 2I M)) inside H_-(A^{2r})."""
    r = m.nrows
    xm = _x_matrix(r, x)
    if not check_numerator_q0(m, x or X_ZX):
        raise ResolutionError("M - MXM is not in Quad")
    i, z = Mat.identity(r), Mat.zeros(r)
    top = block([[i, z], [xm.scale(-2), i - xm * m]])
    bot = block([[z, i.scale(2)], [i.scale(2), m]])
    return SFormation(2 * r, _standard_F(2 * r), vstack(top, bot))


@dataclass(frozen=True)
class LagrangianMarker:
    """Which block of vector pairs spans the lagrangian U."""

    block: str = "x0"


def canonical_order2_form(m: Mat, x: XMatrix | None = None) -> tuple[LinkingResolution, LagrangianMarker]:
    """Resolution (d, delta, phi) = (2I, X, M) of the linking form with

    lambda = (-M/4 I/2; I/2 0) and mu = (-M/4; -X) on (A_2)^r + (A_2)^r,
    lagrangian U = 0 + (A_2)^r.
    """
    r = m.nrows
    xm = _x_matrix(r, x)
    if not is_symmetric(m):
        raise ResolutionError("M is not symmetric")
    if not is_even_matrix(m):
        raise ResolutionError("M has an entry outside 2Z[x]")
    return LinkingResolution(Mat.identity(r).scale(2), xm, m), LagrangianMarker()


def formation_to_resolution(f: SFormation) -> LinkingResolution:
    """Read (d, delta, phi) off a formation of the canonical shape

        G = ((1 0; -delta d  1 - delta phi); (0 d^T; d phi)).

    Other formations are rejected.
    """
    n = f.rank
    if n % 2 or f.F_inclusion != _standard_F(n):
        raise ResolutionError("not a canonical formation")
    u = n // 2
    g = f.G_inclusion
    top, bot = g.submatrix(range(n), range(n)), g.submatrix(range(n, 2 * n), range(n))
    t11, t12, t21, t22 = top.blocks(u, u)
    b11, b12, b21, b22 = bot.blocks(u, u)
    d, phi = b21, b22
    if t11 != Mat.identity(u) or not t12.is_zero() or not b11.is_zero() or b12 != d.T:
        raise ResolutionError("not a canonical formation")
    inv = dyadic_inverse(d)
    delta_h = HalfIntMat(-(t21 * inv.numerator), inv.denom_exp)
    if not delta_h.is_integral():
        raise ResolutionError("not a canonical formation: delta is not integral")
    delta = delta_h.numerator
    if t22 != Mat.identity(u) - delta * phi:
        raise ResolutionError("not a canonical formation")
    return LinkingResolution(d, delta, phi)


def change_generators(res: LinkingResolution, p: Mat, q: Mat) -> LinkingResolution:
    """Re-present T after unimodular base changes P of B_0 and Q of B_1.

    d -> P d Q, delta -> P^-T delta P^-1, phi -> P phi P^T.
    """
    pinv = inverse_unimodular(p)
    inverse_unimodular(q)
    return LinkingResolution(p * res.d * q, pinv.T * res.delta * pinv, p * res.phi * p.T)
