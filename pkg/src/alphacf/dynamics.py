"""The interval maps: digits, orbits, admissibility, and the boundary
dynamics at the two ends of the parameter range.

A point of the interval [(alpha-1)t, alpha*t) moves by x -> A^k C^l . x,
where l >= 1 is minimal with C^l . x outside the interval and k then
re-centers by the floor rule.  Everything here is exact: interval
membership and the floor are decided by certified sign computations, never
by tolerance.
"""

from collections import namedtuple
from fractions import Fraction

from .algebra import (Enclosure, FieldElement, RealAlgebraic, refine,
                      floor_of, sign, quad_solve)
from .moebius import Ctx, INF


Digit = namedtuple("Digit", "k l")


class PoleError(Exception):
    pass


class MapInconsistency(Exception):
    """The paper-derived runtime guards failed; indicates a real bug."""


class AlphaParam:
    """An alpha in [0,1] with its interval data cached."""

    def __init__(self, m, n, alpha):
        self.ctx = Ctx(m, n)
        self.m, self.n = m, n
        if isinstance(alpha, int):
            alpha = Fraction(alpha)
        self.alpha = alpha
        t = self.ctx.t
        self.t = t
        self.l0 = (alpha - 1) * t if not isinstance(alpha, Fraction) \
            else t * alpha - t
        self.r0 = alpha * t if not isinstance(alpha, Fraction) else t * alpha
        if sign_of(alpha) < 0 or sign_of(alpha - 1) > 0:
            raise ValueError("alpha must lie in [0, 1]")

    def contains(self, x):
        """Half-open membership x in [l0, r0)."""
        if x == INF:
            return False
        return self.l0 <= x and x < self.r0

    def contains_closed(self, x):
        if x == INF:
            return False
        return self.l0 <= x and x <= self.r0

    def __repr__(self):
        return f"AlphaParam(m={self.m}, n={self.n}, alpha={self.alpha})"


def sign_of(x):
    if isinstance(x, (int, Fraction)):
        return 0 if x == 0 else (1 if x > 0 else -1)
    return x.sign()


def step(x, ap):
    """One application of the map: returns (Digit, image).

    x must lie in the closed interval [l0, r0]; the image lies in the
    half-open interval.  The l-search is bounded by m-1 per the cylinder
    analysis; exceeding the bound is an internal inconsistency.
    """
    ctx = ap.ctx
    if not ap.contains_closed(x):
        raise MapInconsistency(f"point {x!r} outside closed interval")
    y = x
    found = None
    for l in range(1, ctx.m):
        y = ctx.C.apply(y)
        if y == INF:
            raise PoleError(f"C^{l} hits the pole from {x!r}")
        if not ap.contains(y):
            found = l
            break
    if found is None:
        raise MapInconsistency(f"no exit exponent l <= m-1 for {x!r}")
    z = y / ap.t + (1 - ap.alpha)
    k = -floor_of(z)
    if k == 0:
        raise MapInconsistency("digit k = 0; point failed to exit")
    new = y + k * ap.t
    if not ap.contains(new):
        raise MapInconsistency(f"image {new!r} escaped the interval")
    return Digit(int(k), found), new


OrbitRecord = namedtuple("OrbitRecord", "start digits points pole_at")


def orbit(x, ap, N):
    """N steps of the map from x; stops early only at a pole."""
    points = [x]
    digits = []
    pole_at = None
    cur = x
    for i in range(N):
        try:
            d, cur = step(cur, ap)
        except PoleError:
            pole_at = i
            break
        digits.append(d)
        points.append(cur)
    return OrbitRecord(x, digits, points, pole_at)


def first_return(rec):
    """Index of the first exact return to the starting point, or None."""
    for i in range(1, len(rec.points)):
        if rec.points[i] == rec.start:
            return i
    return None


# ---------------------------------------------------------------------------
# The digit order (Table 1) and admissibility.


def digit_cmp(d1, d2):
    """Full order on digits: level l first; within a level the order runs
    (-1) < (-2) < ... < (big positive) < ... < 2 < 1, matching the spatial
    order of the cylinders."""
    k1, l1 = d1
    k2, l2 = d2
    if l1 != l2:
        return -1 if l1 < l2 else 1
    if k1 == k2:
        return 0
    if k1 < 0 and k2 < 0:
        return -1 if k2 < k1 else 1
    if k1 < 0:
        return -1
    if k2 < 0:
        return 1
    return -1 if k2 < k1 else 1


def digit_lt(d1, d2):
    return digit_cmp(d1, d2) < 0


def digit_seq_cmp(s1, s2):
    for a, b in zip(s1, s2):
        c = digit_cmp(a, b)
        if c:
            return c
    return (len(s1) > len(s2)) - (len(s1) < len(s2))


def admissible(word, ap):
    """Suffix-sandwich admissibility: every suffix of the word must sit
    between the lower and upper kneading prefixes of matching length."""
    word = [Digit(*d) for d in word]
    u = len(word)
    lower = orbit(ap.l0, ap, u).digits
    upper = orbit(ap.r0, ap, u).digits
    for j in range(u):
        suf = word[j:]
        if digit_seq_cmp(lower[:len(suf)], suf) > 0:
            return False
        if digit_seq_cmp(suf, upper[:len(suf)]) > 0:
            return False
    return True


class Alphabet:
    """Finite description of the digit alphabet at alpha: the two boundary
    digits plus the closure rules of the alphabet lemma."""

    def __init__(self, left, right):
        self.left = left     # digit of l0, of the form (-k, 1)
        self.right = right   # digit of r0, (k', l')

    def contains(self, d):
        k, l = d
        kneg, l_left = self.left
        kp, lp = self.right
        if l == lp and k != 0 and k >= kp:
            return True
        if 1 <= l <= lp and k < 0 and k <= kneg:
            return True
        if 1 <= l < lp and k > 0:
            return True
        return False

    def sample(self, kmax):
        out = set()
        kp, lp = self.right
        kneg, _ = self.left
        k = kp
        for _ in range(kmax):
            out.add(Digit(k, lp))
            k += 1
            if k == 0:
                k = 1
        for j in range(kmax):
            for l in range(1, lp + 1):
                out.add(Digit(kneg - j, l))
            for l in range(1, lp):
                out.add(Digit(j + 1, l))
        return out

    def __repr__(self):
        return f"Alphabet(left={self.left}, right={self.right})"


def alphabet(ap):
    if sign_of(ap.alpha) <= 0 or sign_of(ap.alpha - 1) >= 0:
        raise ValueError("alphabet needs 0 < alpha < 1")
    dl, _ = step(ap.l0, ap)
    dr, _ = step(ap.r0, ap)
    if dl.k >= 0 or dl.l != 1:
        raise MapInconsistency(f"left endpoint digit {dl} not of shape (-k,1)")
    return Alphabet(dl, dr)


# ---------------------------------------------------------------------------
# Regime constants (m = 3).


def _linear_mul(p, q):
    """(p1 a + p0)(q1 a + q0) as quadratic coefficients (a2, a1, a0)."""
    p1, p0 = p
    q1, q0 = q
    return (p1 * q1, p1 * q0 + p0 * q1, p0 * q0)


def alpha_quadratic(M, src, dst):
    """Coefficients of the condition M . src(alpha) = dst(alpha), where src
    and dst are linear in alpha over the base field."""
    s1, s0 = src
    num = (M.a * s1, M.a * s0 + M.b)
    den = (M.c * s1, M.c * s0 + M.d)
    lhs = _linear_mul(dst, den)
    return (lhs[0], lhs[1] - num[0], lhs[2] - num[1])


def alpha_quadratic_two(M1, M2, src):
    """Condition M1 . src(alpha) = M2 . src(alpha)."""
    s1, s0 = src
    n1 = (M1.a * s1, M1.a * s0 + M1.b)
    d1 = (M1.c * s1, M1.c * s0 + M1.d)
    n2 = (M2.a * s1, M2.a * s0 + M2.b)
    d2 = (M2.c * s1, M2.c * s0 + M2.d)
    l = _linear_mul(n1, d2)
    r = _linear_mul(n2, d1)
    return (l[0] - r[0], l[1] - r[1], l[2] - r[2])


def _mantissa_exp(x):
    """(mantissa, exponent) with x ~ mantissa * 2**exponent, mantissa a
    float of moderate size; safe for huge field elements."""
    if isinstance(x, (int, Fraction)):
        fr = Fraction(x)
    else:
        e = refine(x, 80)
        fr = (e.lo + e.hi) / 2
    n, d = fr.numerator, fr.denominator
    if n == 0:
        return 0.0, 0
    sh_n = max(0, abs(n).bit_length() - 64)
    sh_d = max(0, d.bit_length() - 64)
    sign = -1.0 if n < 0 else 1.0
    return sign * ((abs(n) >> sh_n) / (d >> sh_d)), sh_n - sh_d


def _scaled_floats(values):
    """Floats proportional to the inputs, scaled by a common power of two
    so the largest has magnitude about one."""
    import math
    pairs = [_mantissa_exp(v) for v in values]
    mags = [(abs(m), e) for m, e in pairs if m != 0.0]
    if not mags:
        return [0.0] * len(pairs)
    top = max(math.log2(a) + e for a, e in mags)
    out = []
    for m, e in pairs:
        out.append(math.ldexp(m, e - int(top)) if m != 0.0 else 0.0)
    return out


def solve_alpha(coeffs, lo, hi, hint=None):
    """Root of the quadratic in a rational window, numerically located then
    exactly certified."""
    a2, a1, a0 = coeffs
    fa2, fa1, fa0 = _scaled_floats([a2, a1, a0])
    cands = []
    if abs(fa2) > 1e-12:
        disc = fa1 * fa1 - 4 * fa2 * fa0
        if disc >= 0:
            rt = disc ** 0.5
            cands = [(-fa1 - rt) / (2 * fa2), (-fa1 + rt) / (2 * fa2)]
    else:
        cands = [-fa0 / fa1]
    import math
    flo, fhi = (math.ldexp(m, e) for m, e in
                (_mantissa_exp(lo), _mantissa_exp(hi)))
    inside = [c for c in cands if flo - 1e-9 <= c <= fhi + 1e-9]
    if hint is not None:
        inside.sort(key=lambda c: abs(c - hint))
        inside = inside[:1]
    if len(inside) != 1:
        raise MapInconsistency(
            f"cannot isolate a root in [{lo}, {hi}]: candidates {cands}")
    c = inside[0]
    eps = 1e-7
    while True:
        sel_lo = max(Fraction(lo), Fraction(c - eps).limit_denominator(10**15))
        sel_hi = min(Fraction(hi), Fraction(c + eps).limit_denominator(10**15))
        try:
            return quad_solve(a2, a1, a0, Enclosure(sel_lo, sel_hi))
        except Exception:
            if eps < 1e-13:
                raise
            eps /= 100


def regime_constants(n):
    """(gamma, epsilon, delta) for m = 3: the three parameter thresholds."""
    ctx = Ctx(3, n)
    t = ctx.t
    src_l0 = (t, -t)          # l0 = alpha*t - t
    dst_r0 = (t, ctx.field.zero())
    Cinv = ctx.C.inverse()
    AinvC = ctx.A.inverse() * ctx.C
    gamma = solve_alpha(alpha_quadratic(Cinv, src_l0, dst_r0),
                        Fraction(0), Fraction(1))
    epsilon = solve_alpha(alpha_quadratic(AinvC, src_l0, dst_r0),
                          Fraction(0), Fraction(1))
    delta = solve_alpha(alpha_quadratic_two(Cinv, AinvC, src_l0),
                        Fraction(0), Fraction(1))
    if not (delta < epsilon and gamma < epsilon):
        raise MapInconsistency("regime constants out of order")
    return gamma, epsilon, delta


# ---------------------------------------------------------------------------
# Boundary suites.


def rational_in(a, b):
    """A rational strictly between a < b (tower elements or rationals)."""
    bits = 32
    while True:
        ea = a if isinstance(a, Fraction) else refine(a, bits)
        eb = b if isinstance(b, Fraction) else refine(b, bits)
        lo = ea if isinstance(ea, Fraction) else ea.hi
        hi = eb if isinstance(eb, Fraction) else eb.lo
        if lo < hi:
            mid = (lo + hi) / 2
            if (isinstance(a, Fraction) or a < mid) and \
               (isinstance(b, Fraction) or mid < b):
                return mid
        bits *= 2
        if bits > 4096:
            raise MapInconsistency("cannot separate endpoints")


def alpha0_suite(m, n):
    """Verification report for the left boundary alpha = 0."""
    ctx = Ctx(m, n)
    ap = AlphaParam(m, n, Fraction(0))
    checks = []
    t, mu, nu = ctx.t, ctx.mu, ctx.nu
    mt = -t

    checks.append(("W fixes -t", ctx.W.apply(mt) == mt))

    AinvC = ctx.A.inverse() * ctx.C
    block = (ctx.A ** -2) * ctx.C * (AinvC ** (n - 2))
    x_i = (AinvC ** (n - 3)).apply(mt)
    x_ii = (AinvC ** (n - 2)).apply(mt)
    minv = -nu.inverse()
    checks.append(("claim (i): sandwich around -1/nu",
                   x_i < minv and minv < x_ii))
    checks.append(("claim (ii): block power reaches -nu",
                   (block ** (m - 2)).apply(mt) == -nu))
    checks.append(("claim (iii): -nu maps to infinity",
                   block.apply(-nu) == INF))

    p = m * n - m - n
    rec = orbit(mt, ap, p)
    ok_period = rec.pole_at is None and rec.points[p] == mt
    checks.append((f"orbit of -t periodic with period {p}", ok_period))

    expected = ([Digit(-1, 1)] * (n - 2) + [Digit(-2, 1)]) * (m - 2) \
        + [Digit(-1, 1)] * (n - 3) + [Digit(-2, 1)]
    checks.append(("period digit word matches the W word",
                   rec.digits == expected))

    chain = []
    for r in range(n - 1):
        cmax = m - 2 if r <= n - 3 else m - 3
        for c in range(cmax + 1):
            chain.append(r + c * (n - 1))
    ordered = all(rec.points[chain[i]] < rec.points[chain[i + 1]]
                  for i in range(len(chain) - 1))
    checks.append(("real ordering of the orbit points", ordered))

    rightmost = rec.points[(m - 3) * (n - 1) + n - 2]
    checks.append(("rightmost orbit point equals -1/t",
                   rightmost == -t.inverse()))
    return checks


def alpha1_suite(m, n):
    """Verification report for the right boundary alpha = 1."""
    ctx = Ctx(m, n)
    ap = AlphaParam(m, n, Fraction(1))
    checks = []
    t, mu = ctx.t, ctx.mu
    Cl = [None] + [ctx.C ** l for l in range(1, m)]
    AC_m1 = ctx.A * Cl[m - 1]
    AC_m2 = ctx.A * (Cl[m - 2] if m > 2 else ctx.I)

    # (1) the orbit of t: n-2 raw steps with digit (1, m-1) down to mu,
    # then the conventional return A C^(m-2) . mu = t.
    cur = t
    ok_digits = True
    pts = [cur]
    for s in range(n - 2):
        d, cur = step(cur, ap)
        pts.append(cur)
        if d != Digit(1, m - 1):
            ok_digits = False
    checks.append(("orbit of t: digits (1, m-1) down to mu",
                   ok_digits and cur == mu))
    checks.append(("powers along the orbit match (A C^(m-1))^s . t",
                   all(pts[s] == (AC_m1 ** s).apply(t)
                       for s in range(n - 1))))
    checks.append(("conventional return A C^(m-2) . mu = t",
                   AC_m2.apply(mu) == t))

    # (2) the unique non-full cylinder [mu + 1/t, t]
    left_end = mu + t.inverse()
    checks.append(("left endpoint of the top cylinder is C A^-1 . 0",
                   (ctx.C * ctx.A.inverse()).apply(ctx.field.zero())
                   == left_end))
    checks.append(("top cylinder endpoint maps to 0",
                   AC_m1.apply(left_end).is_zero()))
    d_left, _ = step(left_end, ap)
    checks.append(("digit at the top cylinder's left endpoint",
                   d_left == Digit(1, m - 1)))
    img_top = AC_m1.apply(t)
    checks.append(("top cylinder is not full (image stops short of t)",
                   img_top < t))

    # interior digit checks certify fullness of the listed cylinders:
    # endpoints are exact preimages of 0 and t inside [0, t].
    def cylinder_full(k, l):
        Minv = ((ctx.A ** k) * Cl[l]).inverse()
        p0 = Minv.apply(ctx.field.zero())
        p1 = Minv.apply(t)
        if p0 == INF or p1 == INF:
            return False
        lo, hi = (p0, p1) if p0 < p1 else (p1, p0)
        if not (ctx.field.zero() <= lo and hi <= t):
            return False
        mid = rational_in(lo, hi)
        d, _ = step(ctx.field.from_rational(mid), ap)
        return d == Digit(k, l)

    full_ok = all(cylinder_full(k, l)
                  for l in range(1, m - 1) for k in (1, 2, 3))
    checks.append(("cylinders (k, l <= m-2) are full", full_ok))
    full_top = all(cylinder_full(k, m - 1) for k in (2, 3))
    checks.append(("cylinders (k >= 2, m-1) are full", full_top))

    # the (k, m-1) cylinders for k >= 2 tile down toward mu
    b2 = (((ctx.A ** 2) * Cl[m - 1]).inverse()).apply(t)
    checks.append(("cylinder (2, m-1) abuts the non-full one at mu + 1/t",
                   b2 == left_end))
    bs = [(((ctx.A ** k) * Cl[m - 1]).inverse()).apply(t)
          for k in range(2, 7)]
    checks.append(("(k, m-1) boundaries decrease toward mu",
                   all(bs[i + 1] < bs[i] for i in range(len(bs) - 1))
                   and all(mu < b for b in bs)))
    return checks
