"""Exact generalized and linking Arf invariants over Z and Z[x].

Submodules: poly (Z[x] and residue polynomials), matrix (matrices and
epsilon-quadratic forms), qgroups (Q-group normal forms), linking (linking
forms from resolutions), arf (the invariants and boundary maps), witt
(signature and Arf over Z), oracle (brute-force checks), cli.
"""

from .poly import IntPoly, ResPoly, tate_compose, tate_decompose
from .matrix import EpsForm, LagrangianWitness, Mat, SplitForm, split_coordinates
from .qgroups import (
    Q0ClassZx,
    Q3ClassZx,
    QnClassZ,
    X_Z,
    X_ZX,
    q_add,
    q_equal,
    reduce_q0_Zx,
    reduce_q1_Zx,
    reduce_q3_Zx,
    reduce_qn_Z,
)
from .linking import LinkingResolution, canonical_order2_form, eval_lambda, eval_mu
from .arf import (
    GF2Form,
    PreconditionError,
    arf_gf2,
    classical_arf,
    generalized_arf_form,
    generalized_arf_Zx,
    linking_arf_Zx,
)
from .witt import signature, signature_mod8

__version__ = "0.1.0"
