"""Brute-force verifiers and random instance generators.

The checks here deliberately avoid the library's own matrix arithmetic:
denominator elements are expanded with sympy, and the democratic Arf count
evaluates the quadratic function directly from the matrix entries.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

import sympy

from .arf import (
    GF2Form,
    PreconditionError,
    arf_gf2,
    classical_arf,
    is_nonsingular_gf2,
    linking_arf_with_lift,
    linking_arf_Zx,
    symplectic_complete,
    find_lagrangian,
    tate_lift_columns,
)
from .linking import LinkingResolution, change_generators, eval_lambda, eval_mu
from .matrix import Mat, block_diag, inverse_unimodular
from .poly import IntPoly, ResPoly
from .qgroups import (
    Q0ClassZx,
    Q3ClassZx,
    check_numerator_q0,
    preimage_f01,
    preimage_f01_literal,
    preimage_f0x,
    preimage_fm1_1,
    preimage_q0_Zx,
    preimage_q3_Zx,
    f01,
    f0x,
    combine_q0,
    fm1_1,
    q_add,
    q_equal,
    reduce_q0_Zx,
    reduce_q3_Zx,
    reduce_qn_Z,
)
from .witt import e8, signature, signature_mod8

MAX_ARF_DIM = 16
MAX_EXHAUSTIVE = 10**6


class BudgetError(ValueError):
    pass


# democratic Arf


def arf_democratic(f: GF2Form) -> int:
    """0 iff q vanishes on more than half of Z_2^n."""
    n = f.n
    if n > MAX_ARF_DIM:
        raise BudgetError(f"dimension {n} exceeds {MAX_ARF_DIM}")
    psi = f.psi
    zeros = 0
    for v in itertools.product((0, 1), repeat=n):
        val = 0
        for i in range(n):
            if v[i]:
                for j in range(n):
                    if v[j] and psi[i][j]:
                        val ^= 1
        zeros += val == 0
    return 0 if 2 * zeros > 2**n else 1


# random generation


def random_poly(rng: random.Random, deg: int, bound: int) -> IntPoly:
    d = rng.randint(-1, deg)
    return IntPoly([rng.randint(-bound, bound) for _ in range(d + 1)])


def random_even_poly(rng: random.Random, deg: int, bound: int) -> IntPoly:
    return random_poly(rng, deg, bound) * 2


def random_matrix(rng: random.Random, r: int, c: int, deg: int, bound: int) -> Mat:
    return Mat([[random_poly(rng, deg, bound) for _ in range(c)] for _ in range(r)], c)


def random_symmetric(rng: random.Random, r: int, deg: int, bound: int) -> Mat:
    rows = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            rows[i][j] = rows[j][i] = random_poly(rng, deg, bound)
    return Mat(rows)


def random_quad(rng: random.Random, r: int, deg: int, bound: int) -> Mat:
    """Symmetric with even diagonal."""
    rows = [[None] * r for _ in range(r)]
    for i in range(r):
        rows[i][i] = random_even_poly(rng, deg, bound)
        for j in range(i + 1, r):
            rows[i][j] = rows[j][i] = random_poly(rng, deg, bound)
    return Mat(rows)


def random_unimodular(rng: random.Random, n: int, steps: int = 6, deg: int = 1, bound: int = 2) -> tuple[Mat, Mat]:
    """(E, E^-1) for a random product of elementary matrices over Z[x]."""
    e = [[IntPoly([int(i == j)]) for j in range(n)] for i in range(n)]
    inv = [row[:] for row in e]
    if n < 2:
        if n and rng.random() < 0.5:
            e = inv = [[IntPoly([-1])]]
        return Mat(e, n), Mat(inv, n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = random_poly(rng, deg, bound)
        # E <- E (1 + c e_ij): column j += c * column i
        for row in e:
            row[j] = row[j] + c * row[i]
        # inverse <- (1 - c e_ij) inverse: row i -= c * row j
        inv[i] = [a - c * b for a, b in zip(inv[i], inv[j])]
        if rng.random() < 0.3:
            k = rng.randrange(n)
            for row in e:
                row[k] = -row[k]
            inv[k] = [-a for a in inv[k]]
    return Mat(e), Mat(inv)


def random_int_unimodular(rng: random.Random, n: int, steps: int = 12) -> Mat:
    e = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for row in e:
            row[j] += c * row[i]
        if rng.random() < 0.2:
            k = rng.randrange(n)
            for row in e:
                row[k] = -row[k]
    return Mat(e)


def random_unimodular_form(rng: random.Random, max_dim: int = 10) -> list[list[int]]:
    """E^T (sum of +-1 and +-E8 blocks) E."""
    blocks = []
    dim = 0
    target = rng.randint(1, max_dim)
    while dim < target:
        if target - dim >= 8 and rng.random() < 0.4:
            s = rng.choice((1, -1))
            blocks.append(Mat([[s * v for v in row] for row in e8()]))
            dim += 8
        else:
            blocks.append(Mat([[rng.choice((1, -1))]]))
            dim += 1
    d = block_diag(*blocks)
    e = random_int_unimodular(rng, dim)
    m = e.T * d * e
    return [[x.constant_term() for x in row] for row in m.rows]


def random_resolution(rng: random.Random, u: int | None = None, deg: int = 1, bound: int = 2) -> LinkingResolution:
    """A resolution satisfying the invariants, presented in random coordinates.

    Built diagonally (d0 = diag(2^k_i), k_i in {0,1,2}) and then moved by
    random unimodular changes of both bases.
    """
    if u is None:
        u = rng.randint(1, 3)
    ks = [rng.choice((0, 1, 1, 2)) for _ in range(u)]
    if all(k == 0 for k in ks):
        ks[0] = 1
    d0 = Mat.diag([1 << k for k in ks])
    delta = [[None] * u for _ in range(u)]
    for i in range(u):
        a = random_poly(rng, deg, bound)
        if ks[i] == 0:
            a = a * 2  # mu vanishes on the unit summands
        delta[i][i] = a
        for j in range(i + 1, u):
            delta[i][j] = delta[j][i] = random_poly(rng, deg, bound)
    delta0 = Mat(delta)
    phi = random_quad(rng, u, deg, bound).scale(2) if rng.random() < 0.5 else random_symmetric(rng, u, deg, bound).scale(2)
    odd = [IntPoly([1]) if ResPoly(2, delta[i][i].coeffs) == ResPoly(2, [1]) and rng.random() < 0.7 else IntPoly() for i in range(u)]
    phi0 = phi + Mat.diag(odd)
    res = LinkingResolution(d0, delta0, phi0)
    p, _ = random_unimodular(rng, u, steps=3, deg=deg, bound=1)
    q, _ = random_unimodular(rng, u, steps=3, deg=deg, bound=1)
    out = change_generators(res, p, q)
    out.check()
    return out


def random_vector_pair(rng: random.Random, u: int, deg: int = 1, bound: int = 3) -> tuple[list, list]:
    return ([random_poly(rng, deg, bound) for _ in range(u)], [random_poly(rng, deg, bound) for _ in range(u)])


# denominator sampling, expanded independently with sympy

_x = sympy.Symbol("x")


def _to_sympy(m: Mat) -> sympy.Matrix:
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: sum(c * _x**k for k, c in enumerate(m[i, j].coeffs)))


def _from_sympy(s: sympy.Matrix) -> Mat:
    rows = []
    for i in range(s.rows):
        row = []
        for j in range(s.cols):
            e = sympy.expand(s[i, j])
            coeffs = sympy.Poly(e, _x).all_coeffs()[::-1] if e != 0 else []
            row.append(IntPoly([int(c) for c in coeffs]))
        rows.append(row)
    return Mat(rows)


def _sx(ring: str) -> sympy.Matrix:
    return sympy.Matrix([[1]]) if ring == "z" else sympy.diag(1, _x)


GROUPS = ("q0zx", "q3zx", "q0z", "q3z")


def denominator_element(group: str, q: Mat, n: Mat) -> Mat:
    """4Q + 2(N+N^T) - 4N^T X N (q0 groups) or Q + N - N X N (q3 groups, N symmetric)."""
    ring = "z" if group.endswith("z") and not group.endswith("zx") else "zx"
    X = _sx(ring)
    Q, N = _to_sympy(q), _to_sympy(n)
    if group.startswith("q0"):
        out = 4 * Q + 2 * (N + N.T) - 4 * N.T * X * N
    elif group.startswith("q3"):
        out = Q + N - N * X * N
    else:
        raise ValueError(f"unknown group {group!r}")
    return _from_sympy(out)


def sample_denominator(group: str, rng: random.Random | int, deg: int = 2, bound: int = 3) -> Mat:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if group not in GROUPS:
        raise ValueError(f"unknown group {group!r}")
    r = 2 if group.endswith("zx") else 1
    d = deg if r == 2 else 0
    q = random_quad(rng, r, d, bound)
    n = random_matrix(rng, r, r, d, bound) if group.startswith("q0") else random_symmetric(rng, r, d, bound)
    return denominator_element(group, q, n)


def random_numerator(group: str, rng: random.Random, deg: int = 3, bound: int = 8) -> Mat:
    if group == "q0zx":
        a = IntPoly([rng.randint(-bound, bound)]) + random_even_poly(rng, deg, bound) * IntPoly([0, 1])
        b = random_even_poly(rng, deg, bound)
        c = random_even_poly(rng, deg, bound)
        m = Mat([[a, b], [b, c]])
        assert check_numerator_q0(m)
        return m
    if group == "q3zx":
        return random_symmetric(rng, 2, deg, bound)
    return Mat([[rng.randint(-bound * 8, bound * 8)]])


def reduce_group(group: str, m: Mat):
    if group == "q0zx":
        return reduce_q0_Zx(m)
    if group == "q3zx":
        return reduce_q3_Zx(m)
    return reduce_qn_Z(int(group[1]), m)


# reports


@dataclass
class Report:
    name: str
    trials: int = 0
    seed: int | None = None
    failures: int = 0
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, example: dict) -> None:
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = example

    def text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = f"{self.name}: {status} ({self.trials} cases, {self.failures} failures, seed={self.seed})"
        if self.counterexample is not None:
            s += "\n  counterexample: " + json.dumps(self.counterexample, sort_keys=True)
        return s

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "trials": self.trials,
            "failures": self.failures,
            "seed": self.seed,
            "counterexample": self.counterexample,
            "details": self.details,
        }


def verify_reduction(group: str, trials: int = 1000, seed: int = 7) -> Report:
    """Denominators reduce to zero, numerator shifts are invisible, reduction is additive."""
    rng = random.Random(seed)
    rep = Report(f"verify_reduction[{group}]", seed=seed)
    for t in range(trials):
        m = random_numerator(group, rng)
        m2 = random_numerator(group, rng)
        dmat = sample_denominator(group, rng)
        rep.trials += 1
        if group.startswith("q0") and not check_numerator_q0(dmat, _X(group)):
            rep.fail({"trial": t, "reason": "denominator outside numerator", "D": dmat.to_json()})
            continue
        zero = reduce_group(group, dmat)
        base = reduce_group(group, m)
        shifted = reduce_group(group, m + dmat)
        total = reduce_group(group, m + m2)
        if not zero.is_zero():
            rep.fail({"trial": t, "reason": "denominator not killed", "D": dmat.to_json()})
        elif not q_equal(base, shifted):
            rep.fail({"trial": t, "reason": "shift changed class", "M": m.to_json(), "D": dmat.to_json()})
        elif not q_equal(total, q_add(base, reduce_group(group, m2))):
            rep.fail({"trial": t, "reason": "not additive", "M": m.to_json(), "M2": m2.to_json()})
    return rep


def _X(group: str):
    from .qgroups import X_Z, X_ZX

    return X_ZX if group.endswith("zx") else X_Z


def _sym_window(deg: int, coeffs: range):
    polys = [IntPoly(c) for c in itertools.product(coeffs, repeat=deg + 1)]
    for a in polys:
        for b in polys:
            for c in polys:
                yield Mat([[a, b], [b, c]])


def exhaustive_q3_truncated(deg: int, lo: int, hi: int, check_sums: bool = True) -> Report:
    """Every symmetric L with entries of degree <= deg and coefficients in [lo, hi]:
    L - LXL reduces to 0 (sympy expansion), and reduction is additive against a
    fixed reference; every target of degree <= deg is attained by the preimage formula."""
    rep = Report(f"exhaustive_q3[deg<={deg}, {lo}..{hi}]")
    if deg < 0 or hi < lo:
        return rep
    count = (hi - lo + 1) ** (3 * (deg + 1))
    if count > MAX_EXHAUSTIVE:
        raise BudgetError(f"{count} instances exceed the budget of {MAX_EXHAUSTIVE}")
    zero = Mat.zeros(2)
    ref = Mat([[IntPoly([1, 1]), IntPoly([0, 1])], [IntPoly([0, 1]), IntPoly([1, 0, 1])]])
    ref_cls = reduce_q3_Zx(ref)
    for lm in _sym_window(deg, range(lo, hi + 1)):
        rep.trials += 1
        dmat = _fast_q3_denominator(lm)
        if not reduce_q3_Zx(dmat).is_zero():
            rep.fail({"L": lm.to_json(), "reason": "L - LXL not killed"})
            continue
        if check_sums and reduce_q3_Zx(lm + ref) != q_add(reduce_q3_Zx(lm), ref_cls):
            rep.fail({"L": lm.to_json(), "reason": "not additive"})
    for t in itertools.product((0, 1), repeat=deg + 1):
        cls = Q3ClassZx.make(t)
        rep.trials += 1
        if reduce_q3_Zx(preimage_q3_Zx(cls)) != cls:
            rep.fail({"target": list(t), "reason": "preimage does not round-trip"})
    return rep


def _fast_q3_denominator(lm: Mat) -> Mat:
    """L - LXL expanded by hand from the entries (independent of Mat.__mul__)."""
    a, b, c = lm[0, 0], lm[0, 1], lm[1, 1]
    x = IntPoly([0, 1])
    # LXL = (a^2 + b^2 x, ab + bcx; ab + bcx, b^2 + c^2 x)
    return Mat(
        [
            [a - (a * a + b * b * x), b - (a * b + b * c * x)],
            [b - (a * b + b * c * x), c - (b * b + c * c * x)],
        ]
    )


# suites


def suite_arf(max_dim: int = 4, random_trials: int = 200, random_dim: int = 6, seed: int = 7) -> Report:
    """classical_arf against the democratic count, exhaustively up to max_dim."""
    rep = Report(f"arf[exhaustive dim<={max_dim}, {random_trials} random dim {random_dim}]", seed=seed)
    nonsingular = 0
    for n in range(0, max_dim + 1):
        for bits in itertools.product((0, 1), repeat=n * n):
            f = GF2Form(n, tuple(tuple(bits[i * n:(i + 1) * n]) for i in range(n)))
            if n % 2 or not is_nonsingular_gf2(f):
                continue
            nonsingular += 1
            rep.trials += 1
            a, b = arf_gf2(f), arf_democratic(f)
            if a != b:
                rep.fail({"psi": [list(r) for r in f.psi], "classical": a, "democratic": b})
    rng = random.Random(seed)
    done = 0
    while done < random_trials:
        f = GF2Form(random_dim, tuple(tuple(rng.randint(0, 1) for _ in range(random_dim)) for _ in range(random_dim)))
        if not is_nonsingular_gf2(f):
            continue
        done += 1
        rep.trials += 1
        e = find_lagrangian(f)
        a, b = classical_arf(f, e, symplectic_complete(f, e)), arf_democratic(f)
        if a != b:
            rep.fail({"psi": [list(r) for r in f.psi], "classical": a, "democratic": b})
    rep.details["nonsingular_exhaustive"] = nonsingular
    return rep


def suite_hirzebruch(trials: int = 200, seed: int = 7, max_dim: int = 10) -> Report:
    rng = random.Random(seed)
    rep = Report(f"hirzebruch[{trials} forms, dim<={max_dim}]", seed=seed)
    for _ in range(trials):
        m = random_unimodular_form(rng, max_dim)
        rep.trials += 1
        s, s8 = signature(m), signature_mod8(m)
        if s % 8 != s8:
            rep.fail({"form": m, "signature": s, "mod8": s8})
    return rep


def suite_surjectivity(deg: int = 3, full_deg: int = 2) -> Report:
    """Explicit preimages reduce back to every target tuple.

    Q_3: every target of degree <= deg, end to end. Q_0: end to end on every
    tuple with components of degree <= full_deg, and at degree <= deg
    exhaustively on each coefficient map f_0(1), f_0(x) and on the coker(2 Delta)
    identification, which together determine the reduction of diag(a, c').
    """
    rep = Report(f"surjectivity[deg<={deg}, full product deg<={full_deg}]")
    for t in itertools.product((0, 1), repeat=deg + 1):
        cls = Q3ClassZx.make(t)
        rep.trials += 1
        if reduce_q3_Zx(preimage_q3_Zx(cls)) != cls:
            rep.fail({"group": "q3zx", "target": list(t)})
    z4 = list(itertools.product(range(4), repeat=full_deg + 1))
    z2 = list(itertools.product(range(2), repeat=full_deg + 1))
    for s in range(8):
        for t in z4:
            for u1 in z2:
                for u2 in z2:
                    for u3 in z2:
                        cls = Q0ClassZx.make(s, t, u1, u2, u3)
                        rep.trials += 1
                        if reduce_q0_Zx(preimage_q0_Zx(cls)) != cls:
                            rep.fail({"group": "q0zx", "target": cls.to_json()})
    z4 = [ResPoly(4, c) for c in itertools.product(range(4), repeat=deg + 1)]
    z2 = [ResPoly(2, c) for c in itertools.product(range(2), repeat=deg + 1)]
    for s in range(8):
        for d in z4:
            for u2 in z2:
                rep.trials += 1
                if f01(preimage_f01(s, d, u2)) != (s, d, u2):
                    rep.fail({"map": "f_0(1)", "target": [s, d.to_list(), u2.to_list()]})
    for e in z4:
        for u3 in z2:
            rep.trials += 1
            if f0x(preimage_f0x(e, u3)) != (e, u3):
                rep.fail({"map": "f_0(x)", "target": [e.to_list(), u3.to_list()]})
    for t in z4:
        for u1 in z2:
            rep.trials += 1
            d = ResPoly(4, u1.coeffs)
            got = combine_q0(0, d, ResPoly(2), d - t, ResPoly(2))
            if (got.t, got.u1) != (t, u1):
                rep.fail({"map": "coker(2Delta)", "target": [t.to_list(), u1.to_list()]})
    literal_bad = sum(
        f01(preimage_f01_literal(0, ResPoly(4), u2))[1] != ResPoly(4) for u2 in z2
    )
    rep.details["literal_f01_mismatches"] = literal_bad
    for t in itertools.product((0, 1), repeat=deg + 1):
        tr = ResPoly(2, t)
        rep.trials += 1
        if fm1_1(preimage_fm1_1(tr)) != tr:
            rep.fail({"map": "f_-1(1)", "target": list(t)})
    return rep


def suite_lift_independence(trials: int = 500, seed: int = 7) -> Report:
    rng = random.Random(seed)
    rep = Report(f"lift_independence[{trials}]", seed=seed)
    for t in range(trials):
        res = random_resolution(rng)
        u = res.rank
        base = linking_arf_Zx(res)
        f0 = tate_lift_columns([ResPoly(2, a.coeffs) for a in res.delta.diagonal()])
        f1 = f0 + random_matrix(rng, 2, u, 2, 2).scale(2)
        sigma = random_quad(rng, u, 1, 2)
        res2 = LinkingResolution(res.d, res.delta, res.phi + res.d * sigma * res.d.T)
        rep.trials += 1
        try:
            got = linking_arf_with_lift(res2, f1)
        except PreconditionError as exc:
            rep.fail({"trial": t, "reason": str(exc), "res": res.to_json()})
            continue
        if got != base:
            rep.fail({"trial": t, "res": res.to_json(), "f0": f1.to_json(), "sigma": sigma.to_json()})
    return rep


def suite_refinement(trials: int = 500, seed: int = 7) -> Report:
    """mu(x+y) = mu(x) + mu(y) + 2 lambda(x,y); symmetry; mu = lambda on the
    diagonal; lambda = 0 on U x U; both well defined on the cokernel."""
    rng = random.Random(seed)
    rep = Report(f"refinement[{trials}]", seed=seed)
    for t in range(trials):
        res = random_resolution(rng)
        u = res.rank
        x = random_vector_pair(rng, u)
        y = random_vector_pair(rng, u)
        xy = ([a + b for a, b in zip(x[0], y[0])], [a + b for a, b in zip(x[1], y[1])])
        lam = eval_lambda(res, x, y)
        checks = {
            "refinement": eval_mu(res, xy) == eval_mu(res, x) + eval_mu(res, y) + lam.doubled(),
            "symmetry": lam == eval_lambda(res, y, x),
            "diagonal": eval_mu(res, x).mod_one() == eval_lambda(res, x, x),
            "lagrangian": not eval_lambda(res, ([0] * u, x[1]), ([0] * u, y[1])),
        }
        # shift x by the image of (z1, z0) under (0 d^T; d phi)
        z = random_vector_pair(rng, u)
        w = res.presentation() * Mat([[e] for e in z[0] + z[1]], 1)
        wv = [w[i, 0] for i in range(2 * u)]
        xs = ([a + b for a, b in zip(x[0], wv[:u])], [a + b for a, b in zip(x[1], wv[u:])])
        checks["lambda_on_T"] = eval_lambda(res, xs, y) == lam
        checks["mu_on_T"] = eval_mu(res, xs) == eval_mu(res, x)
        rep.trials += 1
        bad = [k for k, ok in checks.items() if not ok]
        if bad:
            rep.fail({"trial": t, "failed": bad, "res": res.to_json()})
    return rep


def suite_linking_invariance(trials: int = 100, seed: int = 7) -> Report:
    """The linking Arf class does not depend on the chosen generators."""
    rng = random.Random(seed)
    rep = Report(f"linking_generators[{trials}]", seed=seed)
    for t in range(trials):
        res = random_resolution(rng)
        p, _ = random_unimodular(rng, res.rank, steps=3, bound=1)
        q, _ = random_unimodular(rng, res.rank, steps=3, bound=1)
        rep.trials += 1
        if linking_arf_Zx(res) != linking_arf_Zx(change_generators(res, p, q)):
            rep.fail({"trial": t, "res": res.to_json(), "P": p.to_json(), "Q": q.to_json()})
    return rep


SUITES = ("arf", "hirzebruch", "surjectivity", "lift", "refinement", "linking") + GROUPS


def run_suite(name: str, trials: int | None = None, seed: int = 7, max_dim: int = 4) -> Report:
    if name == "arf":
        return suite_arf(max_dim=max_dim, random_trials=200 if trials is None else trials, seed=seed)
    if name == "hirzebruch":
        return suite_hirzebruch(200 if trials is None else trials, seed)
    if name == "surjectivity":
        return suite_surjectivity()
    if name == "lift":
        return suite_lift_independence(500 if trials is None else trials, seed)
    if name == "refinement":
        return suite_refinement(500 if trials is None else trials, seed)
    if name == "linking":
        return suite_linking_invariance(100 if trials is None else trials, seed)
    if name in GROUPS:
        return verify_reduction(name, 1000 if trials is None else trials, seed)
    raise ValueError(f"unknown suite {name!r}")
