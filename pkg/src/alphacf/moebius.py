"""Projective 2x2 matrices over the field tower and their Moebius action.

Matrices are stored un-normalized; projective equality absorbs the global
sign.  The extended real line adds the single symbol INF.  Reading order
follows the usual convention for matrix words: in a product written left
to right, the rightmost factor acts first.
"""

from fractions import Fraction

from .algebra import FieldElement, RealAlgebraic, field_for


INF = "inf"


class MidAssemblyError(Exception):
    """A k=-1 block word kept a net negative power after cancellation."""


class ProjMatrix:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __mul__(self, other):
        return ProjMatrix(self.a * other.a + self.b * other.c,
                          self.a * other.b + self.b * other.d,
                          self.c * other.a + self.d * other.c,
                          self.c * other.b + self.d * other.d)

    def inverse(self):
        # valid for det = 1 (all our generator words)
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = None
        base = self
        while k:
            if k & 1:
                out = base if out is None else out * base
            base = base * base
            k >>= 1
        if out is None:
            one = self.a - self.a + 1 if isinstance(self.a, (int, Fraction)) \
                else self.a.field.one()
            zero = one - one
            return ProjMatrix(one, zero, zero, one)
        return out

    def apply(self, x):
        if x == INF:
            if _is_zero(self.c):
                return INF
            return self.a / self.c
        den = self.c * x + self.d
        if _is_zero(den):
            return INF
        return (self.a * x + self.b) / den

    __call__ = apply

    def __repr__(self):
        return f"ProjMatrix({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def _is_zero(z):
    if isinstance(z, (int, Fraction)):
        return z == 0
    if isinstance(z, FieldElement):
        return z.is_zero()
    if isinstance(z, RealAlgebraic):
        return z.sign() == 0
    raise TypeError(type(z))


def apply(M, x):
    return M.apply(x)


def proj_eq(M, N):
    if all(M_e == N_e for M_e, N_e in ((M.a, N.a), (M.b, N.b),
                                       (M.c, N.c), (M.d, N.d))):
        return True
    return all(M_e == -N_e for M_e, N_e in ((M.a, N.a), (M.b, N.b),
                                            (M.c, N.c), (M.d, N.d)))


class Ctx:
    """Generators and derived matrices for one (m, n), cached."""

    _cache = {}

    def __new__(cls, m, n):
        key = (m, n)
        if key in cls._cache:
            return cls._cache[key]
        self = super().__new__(cls)
        self.m, self.n = m, n
        F = field_for(m, n)
        self.field = F
        self.mu = F.two_cos(1, m)
        self.nu = F.two_cos(1, n)
        self.t = self.mu + self.nu
        one, zero = F.one(), F.zero()
        self.A = ProjMatrix(one, self.t, zero, one)
        self.B = ProjMatrix(self.nu, one, -one, zero)
        self.C = ProjMatrix(-self.mu, one, -one, zero)
        self.I = ProjMatrix(one, zero, zero, one)
        self._derived = {}
        cls._cache[key] = self
        return self

    def gen(self, name):
        return {"A": self.A, "B": self.B, "C": self.C}[name]

    @property
    def W(self):
        """The alpha=0 relation word A^-2 C (A^-1 C)^(n-3) [A^-2 C (A^-1 C)^(n-2)]^(m-2)."""
        if "W" not in self._derived:
            n, m = self.n, self.m
            AinvC = self.A.inverse() * self.C
            block = (self.A ** -2) * self.C * (AinvC ** (n - 2))
            self._derived["W"] = ((self.A ** -2) * self.C * (AinvC ** (n - 3))
                                  * (block ** (m - 2)))
        return self._derived["W"]

    @property
    def U(self):
        """The alpha=1 relation word A C^(m-2) (A C^-1)^(n-2)."""
        if "U" not in self._derived:
            ACinv = self.A * self.C.inverse()
            self._derived["U"] = (self.A * (self.C ** (self.m - 2))
                                  * (ACinv ** (self.n - 2)))
        return self._derived["U"]

    @property
    def AC(self):
        if "AC" not in self._derived:
            self._derived["AC"] = self.A * self.C
        return self._derived["AC"]

    @property
    def AC2(self):
        if "AC2" not in self._derived:
            self._derived["AC2"] = self.A * self.C * self.C
        return self._derived["AC2"]


def generators(m, n):
    ctx = Ctx(m, n)
    return ctx.A, ctx.B, ctx.C


def parse_word(text):
    """Parse e.g. "A^-2 C A^-1 C" into a GroupWord [(gen, exp), ...]."""
    word = []
    for tok in text.split():
        if "^" in tok:
            g, e = tok.split("^")
            word.append((g, int(e)))
        else:
            word.append((tok, 1))
    for g, e in word:
        if g not in ("A", "B", "C"):
            raise ValueError(f"unknown generator {g!r}")
        if e == 0:
            raise ValueError("zero exponent in group word")
    return word


def eval_word(word, m, n):
    """Evaluate a GroupWord left to right (rightmost factor acts first)."""
    ctx = Ctx(m, n)
    out = ctx.I
    for g, e in word:
        out = out * (ctx.gen(g) ** e)
    return out


# ---------------------------------------------------------------------------
# Right/left matrices of the synchronization machinery (m = 3 only)


def _small_blocks(ctx, k):
    Ak = (ctx.A ** k) * ctx.C
    Ak1 = (ctx.A ** (k + 1)) * ctx.C
    return Ak, Ak1


def right_matrix_word(k, roled_letters, n):
    """R for a prefix word given as (letter, role) pairs, SMALL regime k >= 1."""
    ctx = Ctx(3, n)
    Ak, Ak1 = _small_blocks(ctx, k)
    out = ctx.I
    for letter, role in reversed(roled_letters):
        out = out * ((Ak if role == "c" else Ak1) ** letter)
    return out


def _roled(v):
    letters = v.letters if hasattr(v, "letters") else list(v)
    return [(x, "c" if i % 2 == 0 else "d") for i, x in enumerate(letters)]


def right_matrix(k, v, n):
    """R_{k,v} (k >= 1, SMALL) or R_{-k,v} (k <= -1, LARGE/MID)."""
    if k >= 1:
        return right_matrix_word(k, _roled(v), n)
    return _right_matrix_large(-k, v, n)


def _right_matrix_large(k, v, n):
    ctx = Ctx(3, n)
    if k == 1:
        return _eval_tokens(ctx, _mid_right_tokens(_roled(v), n))
    Etil = (ctx.AC2 ** (n - 3)) * (ctx.U ** (k - 2)) * ctx.AC
    Ftil = (ctx.AC2 ** (n - 3)) * (ctx.U ** (k - 1)) * ctx.AC
    out = ctx.I
    for letter, role in reversed(_roled(v)):
        out = out * ((Etil if role == "c" else Ftil) ** letter)
    return out * (ctx.AC2 ** (n - 2))


def _mid_right_tokens(roled_letters, n):
    """Token form of R_{-1,v}: blocks E_1 = (AC^2)^-1, F_1 = (AC^2)^(n-3) AC.

    Tokens are ("AC2", e) and ("AC", e); adjacent equal tokens merge, and
    any surviving negative exponent means the word lies outside the trimmed
    tree, which is an assembly error.
    """
    toks = []

    def push(tok, e):
        if e == 0:
            return
        if toks and toks[-1][0] == tok:
            s = toks[-1][1] + e
            toks.pop()
            if s:
                toks.append((tok, s))
        else:
            toks.append((tok, e))

    for letter, role in reversed(roled_letters):
        if role == "c":
            push("AC2", -letter)
        else:
            for _ in range(letter):
                push("AC2", n - 3)
                push("AC", 1)
    push("AC2", n - 2)
    for tok, e in toks:
        if e < 0:
            raise MidAssemblyError(
                f"net negative power {tok}^{e} in k=-1 right matrix")
    return toks


def _eval_tokens(ctx, toks):
    out = ctx.I
    for tok, e in toks:
        out = out * ((ctx.AC2 if tok == "AC2" else ctx.AC) ** e)
    return out


def left_matrix(k, v, n):
    """L_{k,v} (k >= 1, SMALL) or L_{-k,v} (k <= -1, LARGE/MID)."""
    ctx = Ctx(3, n)
    letters = v.letters if hasattr(v, "letters") else list(v)
    roled = _roled(letters)
    if k >= 1:
        W = ctx.W
        AinvC = ctx.A.inverse() * ctx.C
        Ctil = (W ** (k - 1)) * (ctx.A ** -2) * ctx.C * (AinvC ** (n - 3))
        Dtil = (W ** k) * (ctx.A ** -2) * ctx.C * (AinvC ** (n - 3))
        out = AinvC ** (n - 2)
        for idx, (letter, role) in enumerate(reversed(roled)):
            e = letter
            if idx == len(roled) - 1:  # the c1 block carries exponent c1 - 1
                e -= 1
            out = out * ((Ctil if role == "c" else Dtil) ** e)
        return out * (W ** k) * (ctx.A ** -1)
    kk = -k
    out = ctx.I
    for letter, role in reversed(roled):
        blk = (ctx.A ** -kk) * ctx.C if role == "c" \
            else (ctx.A ** (-kk - 1)) * ctx.C
        out = out * (blk ** letter)
    return out * (ctx.A ** -1)
