"""Dense polynomials over Z and over the residue rings Z_2, Z_4, Z_8.

Polynomials are immutable. Coefficients are stored in ascending order, so
``IntPoly([1, 0, 2])`` is ``1 + 2x^2``; the zero polynomial has no
coefficients at all.
"""

from __future__ import annotations

from typing import Iterable, Sequence

MODULI = (2, 4, 8)


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class IntPoly:
    """Element of Z[x] with arbitrary-precision coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(a) for a in coeffs]
        object.__setattr__(self, "coeffs", _trim(c))

    @classmethod
    def _raw(cls, coeffs: tuple[int, ...]) -> "IntPoly":
        # caller guarantees `coeffs` is already trimmed
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        return p

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls._raw((c,)) if c else ZERO

    @classmethod
    def monomial(cls, c: int, k: int) -> "IntPoly":
        return cls._raw((0,) * k + (c,)) if c else ZERO

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        c = self.coeffs
        return c[i] if 0 <= i < len(c) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self.coeffs)

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly._raw(tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly.const(other)
        return poly_sub(self, other)

    def __rsub__(self, other) -> "IntPoly":
        return IntPoly.const(other) - self

    def __mul__(self, other) -> "IntPoly":
        if isinstance(other, int):
            return poly_scale(self, other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def to_list(self) -> list[int]:
        return list(self.coeffs)


ZERO = IntPoly._raw(())
ONE = IntPoly._raw((1,))
X = IntPoly._raw((0, 1))


def format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i, a in enumerate(coeffs):
        if a == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if mono and a == 1:
            terms.append(mono)
        elif mono and a == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{a}{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def poly_add(a: IntPoly, b: IntPoly) -> IntPoly:
    ac, bc = a.coeffs, b.coeffs
    if not ac:
        return b
    if not bc:
        return a
    if len(ac) < len(bc):
        ac, bc = bc, ac
    out = list(ac)
    for i, v in enumerate(bc):
        out[i] += v
    if len(ac) == len(bc):
        return IntPoly._raw(_trim(out))
    return IntPoly._raw(tuple(out))


def poly_sub(a: IntPoly, b: IntPoly) -> IntPoly:
    ac, bc = a.coeffs, b.coeffs
    if not bc:
        return a
    n = max(len(ac), len(bc))
    out = list(ac) + [0] * (n - len(ac))
    for i, v in enumerate(bc):
        out[i] -= v
    return IntPoly._raw(_trim(out))


def poly_scale(a: IntPoly, c: int) -> IntPoly:
    if c == 0 or not a.coeffs:
        return ZERO
    return IntPoly._raw(tuple(c * v for v in a.coeffs))


def poly_mul(a: IntPoly, b: IntPoly) -> IntPoly:
    ac, bc = a.coeffs, b.coeffs
    if not ac or not bc:
        return ZERO
    if len(ac) == 1:
        return poly_scale(b, ac[0])
    if len(bc) == 1:
        return poly_scale(a, bc[0])
    out = [0] * (len(ac) + len(bc) - 1)
    for i, u in enumerate(ac):
        if u:
            for j, v in enumerate(bc):
                out[i + j] += u * v
    # leading coefficient is a product of nonzero integers
    return IntPoly._raw(tuple(out))


def poly_neg(a: IntPoly) -> IntPoly:
    return -a


def is_even_poly(a: IntPoly) -> bool:
    return all(v % 2 == 0 for v in a.coeffs)


def half(a: IntPoly) -> IntPoly:
    """Exact division by 2; `a` must be even."""
    if not is_even_poly(a):
        raise ValueError(f"half() of a polynomial with an odd coefficient: {a}")
    return IntPoly._raw(tuple(v // 2 for v in a.coeffs))


def poly_divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """Quotient a / b in Z[x], raising ValueError unless b divides a."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return ZERO
    rem = list(a.coeffs)
    bc = b.coeffs
    db, lead = len(bc) - 1, bc[-1]
    if len(rem) - 1 < db:
        raise ValueError("inexact polynomial division")
    q = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        top = rem[k + db]
        if top % lead:
            raise ValueError("inexact polynomial division")
        c = top // lead
        q[k] = c
        if c:
            for j, v in enumerate(bc):
                rem[k + j] -= c * v
    if any(rem):
        raise ValueError("inexact polynomial division")
    return IntPoly._raw(_trim(q))


def poly_eval(a: IntPoly, x: int) -> int:
    acc = 0
    for v in reversed(a.coeffs):
        acc = acc * x + v
    return acc


class ResPoly:
    """Element of Z_m[x] for m in {2, 4, 8}, coefficients in [0, m)."""

    __slots__ = ("modulus", "coeffs")

    def __init__(self, modulus: int, coeffs: Iterable[int] = ()):
        if modulus not in MODULI:
            raise ValueError(f"modulus must be one of {MODULI}, got {modulus}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", _trim([int(v) % modulus for v in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("ResPoly is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ResPoly):
            return NotImplemented
        return self.modulus == other.modulus and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeffs))

    def __repr__(self) -> str:
        return f"ResPoly({self.modulus}, {list(self.coeffs)})"

    def __str__(self) -> str:
        return f"{format_poly(self.coeffs)} (mod {self.modulus})"

    def __getitem__(self, i: int) -> int:
        c = self.coeffs
        return c[i] if 0 <= i < len(c) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "ResPoly") -> "ResPoly":
        _check_same_modulus(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ResPoly(self.modulus, (self[i] + other[i] for i in range(n)))

    def __neg__(self) -> "ResPoly":
        return ResPoly(self.modulus, (-v for v in self.coeffs))

    def __sub__(self, other: "ResPoly") -> "ResPoly":
        return self + (-other)

    def __mul__(self, other: "ResPoly") -> "ResPoly":
        _check_same_modulus(self, other)
        prod = poly_mul(IntPoly(self.coeffs), IntPoly(other.coeffs))
        return ResPoly(self.modulus, prod.coeffs)

    def lift(self) -> IntPoly:
        """The integral lift with coefficients in [0, modulus)."""
        return IntPoly._raw(self.coeffs)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _check_same_modulus(a: ResPoly, b: ResPoly) -> None:
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def reduce_mod(a: IntPoly, m: int) -> ResPoly:
    return ResPoly(m, a.coeffs)


# Tate cohomology of Z[x]: H^0(Z_2; Z[x]) = Z_2[x], free of rank 2 over the
# squares with basis {1, x}.


def tate_decompose(a: ResPoly | IntPoly) -> tuple[ResPoly, ResPoly]:
    """Unique (p, q) over Z_2 with a = p^2 + q^2 x (mod 2).

    p collects the even-index coefficients and q the odd-index ones.
    """
    c = a.coeffs
    if isinstance(a, IntPoly) or a.modulus != 2:
        c = tuple(v % 2 for v in c)
    return ResPoly(2, c[0::2]), ResPoly(2, c[1::2])


def tate_compose(p: ResPoly, q: ResPoly) -> ResPoly:
    if p.modulus != 2 or q.modulus != 2:
        raise ValueError("tate_compose expects residues mod 2")
    n = max(2 * len(p.coeffs), 2 * len(q.coeffs))
    out = [0] * n
    # squaring is additive mod 2: (sum p_i x^i)^2 = sum p_i x^{2i}
    for i, v in enumerate(p.coeffs):
        out[2 * i] = v
    for i, v in enumerate(q.coeffs):
        out[2 * i + 1] = v
    return ResPoly(2, out)


def as_poly(v) -> IntPoly:
    """Coerce an int, a coefficient list or an IntPoly to IntPoly."""
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly.const(v)
    if isinstance(v, ResPoly):
        return v.lift()
    return IntPoly(v)
