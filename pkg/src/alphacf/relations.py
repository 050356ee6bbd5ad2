"""Exact projective verification of the group-element identities behind
the synchronization machinery.

Every identity is checked as an equality of 2x2 matrices up to global
sign, over a fixed grid of parameters recorded in MANIFEST.  A single
failure anywhere on the grid is a build-stopping regression.
"""

from collections import namedtuple
from itertools import product

from .moebius import Ctx, proj_eq, right_matrix, left_matrix
from .words import enumerate_tree


IdentityCase = namedtuple("IdentityCase",
                          "identity params passed")


MANIFEST = {
    "version": 1,
    "n_max": 8,
    "k_max": 5,
    "vec_len_max": 3,
    "entry_max": 4,
    "u_values": (-1, 0, 2),
}


def verify_W_forms(m, n):
    """The long product defining W equals A^-1 C^-1 A C A and fixes -t."""
    ctx = Ctx(m, n)
    short = (ctx.A.inverse() * ctx.C.inverse() * ctx.A * ctx.C * ctx.A)
    if not proj_eq(ctx.W, short):
        return False
    return ctx.W.apply(-ctx.t) == -ctx.t


def verify_short_right(u, k, a, n):
    """A^u C (A^k C)^a
    = A^(u-1) C (A^-1 C)^(n-2) [W^(k-1) A^-2 C (A^-1 C)^(n-3)]^(a-1)
      W^k A^-1."""
    ctx = Ctx(3, n)
    A, C, W = ctx.A, ctx.C, ctx.W
    AinvC = A.inverse() * C
    lhs = (A ** u) * C * (((A ** k) * C) ** a)
    block = (W ** (k - 1)) * (A ** -2) * C * (AinvC ** (n - 3))
    rhs = ((A ** (u - 1)) * C * (AinvC ** (n - 2)) * (block ** (a - 1))
           * (W ** k) * (A ** -1))
    return proj_eq(lhs, rhs)


def verify_w_middle(k, n):
    """W A^-1 A^k C A^-1 C = A^-2 C (A^-1 C)^(n-3) W^k A^-2 C."""
    ctx = Ctx(3, n)
    A, C, W = ctx.A, ctx.C, ctx.W
    AinvC = A.inverse() * C
    lhs = W * (A ** (k - 1)) * C * AinvC
    rhs = (A ** -2) * C * (AinvC ** (n - 3)) * (W ** k) * (A ** -2) * C
    return proj_eq(lhs, rhs)


def verify_long_small(u, k, a_vec, b_vec, n):
    """The closed form for A^u C (A^k C)^(a_s) (A^(k+1) C)^(b_(s-1)) ...
    (A^k C)^(a_1); it is what makes the left matrix a conjugate-shift of
    the right matrix."""
    if len(a_vec) != len(b_vec) + 1:
        raise ValueError("need one more a exponent than b exponents")
    ctx = Ctx(3, n)
    A, C, W = ctx.A, ctx.C, ctx.W
    AinvC = A.inverse() * C
    AkC = (A ** k) * C
    Ak1C = (A ** (k + 1)) * C
    lhs = (A ** u) * C
    for i, a in enumerate(reversed(a_vec)):
        lhs = lhs * (AkC ** a)
        if i < len(b_vec):
            lhs = lhs * (Ak1C ** tuple(reversed(b_vec))[i])
    blk_a = AinvC ** (n - 3) * (W ** (k - 1)) * (A ** -2) * C
    blk_b = AinvC ** (n - 3) * (W ** k) * (A ** -2) * C
    rhs = (A ** (u - 1)) * C * (A ** -1) * C
    for i, a in enumerate(reversed(a_vec)):
        last = (i == len(a_vec) - 1)
        rhs = rhs * (blk_a ** (a - 1 if last else a))
        if not last:
            rhs = rhs * (blk_b ** tuple(reversed(b_vec))[i])
    rhs = rhs * (AinvC ** (n - 3)) * (W ** k) * (A ** -1)
    return proj_eq(lhs, rhs)


def verify_one_step(k, a, n):
    """C A^-1 C (A^-k C)^a A^-1
    = [(A C^2)^(n-3) U^(k-2) A C]^(a-1) (A C^2)^(n-3) U^(k-1)."""
    ctx = Ctx(3, n)
    A, C, U = ctx.A, ctx.C, ctx.U
    AC, AC2 = ctx.AC, ctx.AC2
    lhs = C * (A ** -1) * C * (((A ** -k) * C) ** a) * (A ** -1)
    block = (AC2 ** (n - 3)) * (U ** (k - 2)) * AC
    rhs = (block ** (a - 1)) * (AC2 ** (n - 3)) * (U ** (k - 1))
    return proj_eq(lhs, rhs)


def verify_long_large(k, a_vec, b_vec, n):
    """The closed form for
    C A^-1 C (A^-k C)^(a_s) (A^-(k+1) C)^(b_(s-1)) ... (A^-k C)^(a_1) A^-1
    as an alternating product of (A C^2)/U blocks."""
    if len(a_vec) != len(b_vec) + 1 or len(a_vec) < 2:
        raise ValueError("need s >= 2 with one more a exponent than b")
    ctx = Ctx(3, n)
    A, C, U = ctx.A, ctx.C, ctx.U
    AC, AC2 = ctx.AC, ctx.AC2
    AmkC = (A ** -k) * C
    Amk1C = (A ** -(k + 1)) * C
    lhs = C * (A ** -1) * C
    for i, a in enumerate(reversed(a_vec)):
        lhs = lhs * (AmkC ** a)
        if i < len(b_vec):
            lhs = lhs * (Amk1C ** tuple(reversed(b_vec))[i])
    lhs = lhs * (A ** -1)
    P = (AC2 ** (n - 3)) * (U ** (k - 2)) * AC
    Q = (AC2 ** (n - 3)) * (U ** (k - 1)) * AC
    X = (AC2 ** (n - 3)) * AC * AC2
    s = len(a_vec)
    rev_a = tuple(reversed(a_vec))   # a_s, a_(s-1), ..., a_1
    rev_b = tuple(reversed(b_vec))   # b_(s-1), ..., b_1
    rhs = P ** rev_a[0]
    for i in range(len(rev_b)):
        rhs = rhs * (Q ** (rev_b[i] - 1)) * X
        a_next = rev_a[i + 1]
        last = (i == len(rev_b) - 1)
        rhs = rhs * (P ** (a_next if last else a_next + 1))
    rhs = rhs * (AC2 ** (n - 3)) * (U ** (k - 1))
    return proj_eq(lhs, rhs)


def verify_left_right_consistency(regime_k, v, n):
    """The left matrix equals the conjugating prefix times the right
    matrix: C^-1 A C R (small index) resp. C^-1 A C^2 R (negative index)."""
    ctx = Ctx(3, n)
    R = right_matrix(regime_k, v, n)
    L = left_matrix(regime_k, v, n)
    if regime_k >= 1:
        conj = ctx.C.inverse() * ctx.A * ctx.C
    else:
        conj = ctx.C.inverse() * ctx.A * ctx.C * ctx.C
    return proj_eq(L, conj * R)


def _exponent_vectors(len_max, entry_max):
    for s in range(1, len_max + 1):
        for a_vec in product(range(1, entry_max + 1), repeat=s):
            for b_vec in product(range(1, entry_max + 1), repeat=s - 1):
                yield a_vec, b_vec


def run_identity_suite(n_max=None, k_max=None, progress=None):
    """All manifest cases; yields IdentityCase records."""
    man = MANIFEST
    n_max = man["n_max"] if n_max is None else n_max
    k_max = man["k_max"] if k_max is None else k_max
    vec_len = man["vec_len_max"]
    entry_max = man["entry_max"]

    for m in range(3, n_max + 1):
        for n in range(m, n_max + 1):
            yield IdentityCase("W_forms", {"m": m, "n": n},
                               verify_W_forms(m, n))
    for n in range(3, n_max + 1):
        for k in range(1, k_max + 1):
            yield IdentityCase("w_middle", {"n": n, "k": k},
                               verify_w_middle(k, n))
            for a in range(1, entry_max + 1):
                for u in man["u_values"]:
                    yield IdentityCase(
                        "short_right", {"u": u, "k": k, "a": a, "n": n},
                        verify_short_right(u, k, a, n))
                yield IdentityCase("one_step", {"k": k, "a": a, "n": n},
                                   verify_one_step(k, a, n))
        for k in range(1, min(3, k_max) + 1):
            for a_vec, b_vec in _exponent_vectors(min(vec_len, 3),
                                                  min(entry_max, 3)):
                yield IdentityCase(
                    "long_small",
                    {"u": 0, "k": k, "a": a_vec, "b": b_vec, "n": n},
                    verify_long_small(0, k, a_vec, b_vec, n))
                if len(a_vec) >= 2:
                    yield IdentityCase(
                        "long_large",
                        {"k": k, "a": a_vec, "b": b_vec, "n": n},
                        verify_long_large(k, a_vec, b_vec, n))
        for k in (1, 2, -2, -3):
            for v in enumerate_tree(3, 2):
                yield IdentityCase(
                    "left_right", {"k": k, "v": v.letters, "n": n},
                    verify_left_right_consistency(k, v, n))
