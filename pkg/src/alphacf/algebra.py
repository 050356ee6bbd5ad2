"""Exact real arithmetic in Q(nu), nu = 2cos(pi/n), plus one quadratic level.

The number field is represented by dense polynomial residues mod the
minimal polynomial of nu.  On top of it sits a single quadratic extension
p + q*sqrt(D) with p, q, D in the base field; that is enough to house every
interval endpoint we ever need, and any attempt to nest deeper raises
TowerError.  All signs and comparisons are decided exactly: either by a
coefficient test, or by refining a rational enclosure until zero is
excluded (which terminates, because a nonzero residue cannot vanish at a
root of an irreducible polynomial).
"""

from fractions import Fraction
from math import gcd, isqrt, lcm

import sympy


class TowerError(Exception):
    """Arithmetic would leave the supported quadratic tower."""


class NoRootInSelectorError(Exception):
    pass


class TwoRootsInSelectorError(Exception):
    pass


class NegativeDiscriminantError(Exception):
    pass


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class Enclosure:
    """A closed rational interval [lo, hi]."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = _frac(lo), _frac(hi)
        if lo > hi:
            raise ValueError("empty enclosure")
        self.lo, self.hi = lo, hi

    def width(self):
        return self.hi - self.lo

    def mid(self):
        return (self.lo + self.hi) / 2

    def contains(self, x):
        x = _frac(x)
        return self.lo <= x <= self.hi

    def excludes_zero(self):
        return self.lo > 0 or self.hi < 0

    def __add__(self, other):
        return Enclosure(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        return Enclosure(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __mul__(self, other):
        ps = (self.lo * other.lo, self.lo * other.hi,
              self.hi * other.lo, self.hi * other.hi)
        return Enclosure(min(ps), max(ps))

    def scale(self, r):
        r = _frac(r)
        if r >= 0:
            return Enclosure(self.lo * r, self.hi * r)
        return Enclosure(self.hi * r, self.lo * r)

    def recip(self):
        if not self.excludes_zero():
            raise ZeroDivisionError("enclosure straddles zero")
        return Enclosure(1 / self.hi, 1 / self.lo)

    def sqrt(self, bits=64):
        if self.lo < 0:
            raise ValueError("sqrt of an interval with negative lower end")
        return Enclosure(_sqrt_lower(self.lo, bits), _sqrt_upper(self.hi, bits))

    def disjoint(self, other):
        return self.hi < other.lo or other.hi < self.lo

    def __repr__(self):
        return f"Enclosure({self.lo}, {self.hi})"


def _sqrt_lower(f, bits):
    # floor of sqrt(f) on a 2^-bits grid
    f = _frac(f)
    scaled = f.numerator * f.denominator * (1 << (2 * bits))
    s = isqrt(scaled)
    return Fraction(s, f.denominator << bits)


def _sqrt_upper(f, bits):
    f = _frac(f)
    scaled = f.numerator * f.denominator * (1 << (2 * bits))
    s = isqrt(scaled)
    if s * s < scaled:
        s += 1
    return Fraction(s, f.denominator << bits)


def _cheb_polys(kmax):
    """p_k with p_k(2cos x) = 2cos(kx), as integer coeff lists (low first)."""
    ps = [[2], [0, 1]]
    x = [0, 1]
    while len(ps) <= kmax:
        a, b = ps[-1], ps[-2]
        nxt = [0] + a  # x * p_{k}
        for i, c in enumerate(b):
            nxt[i] -= c
        ps.append(nxt)
    return ps


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def minpoly_of_nu(n):
    """Minimal polynomial of 2cos(pi/n), monic, integer coeffs, low first.

    Construction: the polynomial p_n(x) + 2 has root set {2cos((2j+1)pi/n)},
    which contains 2cos(pi/n); factor it over Q and keep the irreducible
    factor with a sign change across a tight enclosure of 2cos(pi/n).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    pn = _cheb_polys(n)[n]
    poly = list(pn)
    poly[0] += 2
    x = sympy.Symbol("x")
    expr = sum(sympy.Integer(c) * x**i for i, c in enumerate(poly))
    _, factors = sympy.Poly(expr, x).factor_list()
    target = sympy.cos(sympy.pi / n) * 2
    approx = Fraction(str(target.evalf(60)))
    for fac, _mult in factors:
        coeffs = [Fraction(sympy.Rational(c)) for c in reversed(fac.all_coeffs())]
        # widen until we see a sign change (root is simple and isolated)
        for ex in (50, 40, 30, 20, 10):
            eps = Fraction(1, 10**ex)
            lo, hi = approx - eps, approx + eps
            slo, shi = _poly_eval(coeffs, lo), _poly_eval(coeffs, hi)
            if slo != 0 and shi != 0 and (slo < 0) != (shi < 0):
                lead = coeffs[-1]
                return [c / lead for c in coeffs]
    raise RuntimeError(f"no factor of p_{n}+2 vanishes at 2cos(pi/{n})")


class NumberField:
    """Q(nu_n) with nu_n = 2cos(pi/n), residues mod the minimal polynomial."""

    _cache = {}

    def __new__(cls, n):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        self.n = n
        coeffs = minpoly_of_nu(n)
        assert all(c.denominator == 1 for c in coeffs) and coeffs[-1] == 1
        self.minpoly = tuple(int(c) for c in coeffs)
        self._minpoly_int = self.minpoly
        self.degree = len(coeffs) - 1
        target = 2 * sympy.cos(sympy.pi / n)
        approx = Fraction(str(target.evalf(60)))
        eps = Fraction(1, 10**40)
        self._nu_enc = self._bracket(approx - eps, approx + eps)
        self._conj_roots = None
        cls._cache[n] = self
        return self

    def _mp_eval(self, x):
        return _poly_eval([Fraction(c) for c in self.minpoly], x)

    def _bracket(self, lo, hi):
        slo, shi = self._mp_eval(lo), self._mp_eval(hi)
        step = hi - lo
        while slo == 0 or shi == 0 or (slo < 0) == (shi < 0):
            lo, hi = lo - step, hi + step
            slo, shi = self._mp_eval(lo), self._mp_eval(hi)
            step *= 2
        return Enclosure(lo, hi)

    def nu_enclosure(self, bits):
        """Rational interval of width <= 2^-bits around nu, by bisection."""
        enc = self._nu_enc
        lo, hi = enc.lo, enc.hi
        slo = self._mp_eval(lo)
        tol = Fraction(1, 1 << bits)
        while hi - lo > tol:
            mid = (lo + hi) / 2
            smid = self._mp_eval(mid)
            if smid == 0:
                # nu is irrational unless degree 1; nudge the midpoint
                mid = lo + (hi - lo) * Fraction(1, 3)
                smid = self._mp_eval(mid)
            if (smid < 0) == (slo < 0):
                lo, slo = mid, smid
            else:
                hi = mid
        self._nu_enc = Enclosure(lo, hi)
        return self._nu_enc

    # -- element constructors ------------------------------------------------

    def element(self, coeffs):
        cs = [_frac(c) for c in coeffs]
        if len(cs) > self.degree:
            cs = self._reduce(cs)
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    def from_rational(self, r):
        return self.element([_frac(r)])

    def zero(self):
        return self.from_rational(0)

    def one(self):
        return self.from_rational(1)

    def nu(self):
        if self.degree == 1:
            # nu is rational: the root of the linear minpoly
            return self.from_rational(Fraction(-self.minpoly[0], self.minpoly[1]))
        return self.element([0, 1])

    def two_cos(self, num, den):
        """The element 2cos(num*pi/den), for den dividing n (or rational)."""
        if den == 1:
            return self.from_rational(2 if num % 2 == 0 else -2)
        if den == 2:
            return self.from_rational(0) if num % 2 else self.from_rational(2)
        if den == 3:
            r = num % 6
            return self.from_rational({0: 2, 1: 1, 2: -1, 3: -2, 4: -1, 5: 1}[r])
        if self.n % den != 0:
            raise ValueError(f"2cos({num}pi/{den}) may not lie in Q(nu_{self.n})")
        k = num * (self.n // den)
        pk = _cheb_polys(k)[k]
        return self.element([Fraction(c) for c in pk]) if self.degree > 1 \
            else self.from_rational(_poly_eval([Fraction(c) for c in pk],
                                               self.nu().coeffs[0]))

    # -- polynomial plumbing -------------------------------------------------

    def _reduce(self, cs):
        m = [Fraction(c) for c in self.minpoly]
        d = self.degree
        cs = list(cs)
        for i in range(len(cs) - 1, d - 1, -1):
            c = cs[i]
            if c:
                for j in range(d + 1):
                    cs[i - d + j] -= c * m[j]
        return cs[:d]

    def mul_coeffs(self, a, b):
        # Clear denominators so the convolution and the reduction modulo the
        # (monic, integer) minimal polynomial run in plain int arithmetic.
        da = db = 1
        for c in a:
            d = c.denominator
            da = da * d // gcd(da, d)
        for c in b:
            d = c.denominator
            db = db * d // gcd(db, d)
        ia = [c.numerator * (da // c.denominator) for c in a]
        ib = [c.numerator * (db // c.denominator) for c in b]
        out = [0] * (len(ia) + len(ib) - 1)
        for i, ai in enumerate(ia):
            if ai:
                for j, bj in enumerate(ib):
                    out[i + j] += ai * bj
        m = self._minpoly_int
        d = self.degree
        for i in range(len(out) - 1, d - 1, -1):
            c = out[i]
            if c:
                for j in range(d):
                    out[i - d + j] -= c * m[j]
        den = da * db
        return [Fraction(c, den) for c in out[:d]]

    def inv_coeffs(self, a):
        # extended Euclid in Q[x] against the minimal polynomial
        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        def trim(p):
            d = deg(p)
            return p[:d + 1] if d >= 0 else []

        def divmod_poly(num, den):
            num = list(num)
            dd = deg(den)
            q = [Fraction(0)] * max(deg(num) - dd + 1, 1)
            while deg(num) >= dd:
                shift = deg(num) - dd
                f = num[deg(num)] / den[dd]
                q[shift] += f
                for j in range(dd + 1):
                    num[shift + j] -= f * den[j]
            return q, trim(num)

        r0 = [Fraction(c) for c in self.minpoly]
        r1 = trim(list(a))
        if not r1:
            raise ZeroDivisionError("inverse of zero field element")
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = divmod_poly(r0, r1)
            if deg(r) < 0:
                break
            s = list(s0)
            s += [Fraction(0)] * (len(q) + len(s1) - 1 - len(s))
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        s[i + j] -= qi * sj
            r0, r1, s0, s1 = r1, r, s1, trim(s) or [Fraction(0)]
        lead = r1[deg(r1)]
        inv = [c / lead for c in s1]
        return self._reduce(inv)

    def conj_roots(self, dps=60):
        """All real roots of the minimal polynomial, high precision floats."""
        if self._conj_roots is None:
            import mpmath
            with mpmath.workdps(dps):
                rts = mpmath.polyroots([mpmath.mpf(c) for c in
                                        reversed(self.minpoly)], maxsteps=200)
                self._conj_roots = [mpmath.mpf(r.real) for r in rts]
        return self._conj_roots

    def __repr__(self):
        return f"NumberField(n={self.n}, degree={self.degree})"


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise TowerError("mixed base fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # -- ring ops ------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in
                                              zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cs = self.field.mul_coeffs(list(self.coeffs), list(o.coeffs))
        cs += [Fraction(0)] * (self.field.degree - len(cs))
        return FieldElement(self.field, tuple(cs))

    __rmul__ = __mul__

    def inverse(self):
        cs = self.field.inv_coeffs(list(self.coeffs))
        cs += [Fraction(0)] * (self.field.degree - len(cs))
        return FieldElement(self.field, tuple(cs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError("not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, RealAlgebraic):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.n, self.coeffs))

    # -- analytics -----------------------------------------------------------

    def enclosure(self, bits=64):
        nu = self.field.nu_enclosure(bits)
        acc = Enclosure(0, 0)
        for c in reversed(self.coeffs):
            acc = acc * nu + Enclosure(c, c)
        return acc

    def sign(self):
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        bits = 32
        while True:
            enc = self.enclosure(bits)
            if enc.excludes_zero():
                return 1 if enc.lo > 0 else -1
            bits *= 2

    def _cmp(self, other):
        d = self - other
        if isinstance(d, FieldElement):
            return d.sign()
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, RealAlgebraic):
            return other > self
        return self._cmp(other) < 0

    def __le__(self, other):
        if isinstance(other, RealAlgebraic):
            return other >= self
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if isinstance(other, RealAlgebraic):
            return other < self
        return self._cmp(other) > 0

    def __ge__(self, other):
        if isinstance(other, RealAlgebraic):
            return other <= self
        return self._cmp(other) >= 0

    def __float__(self):
        return float(self.enclosure(64).mid())

    def __repr__(self):
        if self.is_rational():
            return f"FE({self.coeffs[0]})"
        return f"FE({list(self.coeffs)} @ n={self.field.n})"


def try_sqrt(D):
    """Exact square root of a FieldElement in its own field, or None.

    Rational radicands use integer square roots.  Otherwise the candidate
    root is reconstructed numerically from all real embeddings (one sign
    choice per embedding) and then verified exactly; fields of degree > 6
    skip the search and return None (the radical form is kept).
    """
    field = D.field
    if D.is_zero():
        return field.zero()
    if D.sign() < 0:
        raise ValueError("negative radicand")
    if D.is_rational():
        f = D.as_fraction()
        rn, rd = isqrt(f.numerator), isqrt(f.denominator)
        if rn * rn == f.numerator and rd * rd == f.denominator:
            return field.from_rational(Fraction(rn, rd))
        if field.degree == 1:
            return None
    d = field.degree
    if d == 1 or d > 6:
        return None
    import mpmath
    with mpmath.workdps(60):
        roots = field.conj_roots()
        vals = []
        for r in roots:
            acc = mpmath.mpf(0)
            for c in reversed(D.coeffs):
                acc = acc * r + mpmath.mpf(c.numerator) / c.denominator
            vals.append(acc)
        if any(v < -mpmath.mpf(10) ** -40 for v in vals):
            return None  # a conjugate is negative: no totally real square root
        sq = [mpmath.sqrt(abs(v)) for v in vals]
        V = mpmath.matrix(d, d)
        for i, r in enumerate(roots):
            for j in range(d):
                V[i, j] = r ** j
        for mask in range(1 << (d - 1)):
            rhs = mpmath.matrix([sq[0]] +
                                [sq[i] if not (mask >> (i - 1)) & 1 else -sq[i]
                                 for i in range(1, d)])
            try:
                sol = mpmath.lu_solve(V, rhs)
            except ZeroDivisionError:
                continue
            cand = [Fraction(str(mpmath.nstr(c, 40))).limit_denominator(10**12)
                    for c in sol]
            g = field.element(cand)
            if g * g == D:
                if g.sign() < 0:
                    g = -g
                return g
    return None


class RealAlgebraic:
    """p + q*sqrt(D) over a NumberField; the single quadratic level."""

    __slots__ = ("field", "p", "q", "D")

    def __init__(self, p, q, D):
        self.field = p.field
        self.p, self.q, self.D = p, q, D

    @classmethod
    def make(cls, p, q, D):
        field = p.field
        if q.is_zero() or D.is_zero():
            return cls(p, field.zero(), field.zero())
        g = try_sqrt(D)
        if g is not None:
            return cls(p + q * g, field.zero(), field.zero())
        return cls(p, q, D)

    @classmethod
    def from_field(cls, fe):
        return cls(fe, fe.field.zero(), fe.field.zero())

    @classmethod
    def from_rational(cls, field, r):
        return cls.from_field(field.from_rational(r))

    def is_pure(self):
        return self.q.is_zero()

    def pure_part(self):
        if not self.is_pure():
            raise TowerError("not a base-field element")
        return self.p

    # -- coercion ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RealAlgebraic):
            if other.field is not self.field:
                raise TowerError("mixed base fields")
            return other
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise TowerError("mixed base fields")
            return RealAlgebraic.from_field(other)
        if isinstance(other, (int, Fraction)):
            return RealAlgebraic.from_rational(self.field, other)
        return None

    def _compatible(self, o):
        return self.is_pure() or o.is_pure() or self.D == o.D

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._compatible(o):
            raise TowerError("sum of incommensurable radicals")
        D = self.D if not self.is_pure() else o.D
        return RealAlgebraic(self.p + o.p, self.q + o.q, D)

    __radd__ = __add__

    def __neg__(self):
        return RealAlgebraic(-self.p, -self.q, self.D)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._compatible(o):
            raise TowerError("product of incommensurable radicals")
        D = self.D if not self.is_pure() else o.D
        p = self.p * o.p + self.q * o.q * D
        q = self.p * o.q + self.q * o.p
        return RealAlgebraic(p, q, D)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_pure():
            return RealAlgebraic.from_field(self.p.inverse())
        nrm = self.p * self.p - self.q * self.q * self.D
        if nrm.is_zero():
            raise ZeroDivisionError("inverse of zero")
        ni = nrm.inverse()
        return RealAlgebraic(self.p * ni, -self.q * ni, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inverse()

    def conjugate(self):
        return RealAlgebraic(self.p, -self.q, self.D)

    # -- sign and order ------------------------------------------------------

    def sign(self):
        if self.is_pure():
            return self.p.sign()
        sp, sq = self.p.sign(), self.q.sign()
        if sp == 0:
            return sq
        if sq == 0 or sp == sq:
            return sp
        s2 = (self.p * self.p - self.q * self.q * self.D).sign()
        if s2 == 0:
            return 0
        return sp * s2

    def is_zero(self):
        return self.sign() == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self._compatible(o):
            return (self - o).sign() == 0
        return self._cross_eq(o)

    def __hash__(self):
        # hash by a coarse certified enclosure bucket is unsound for exact
        # equality across radicands; fall back to the defining data when
        # pure, and an enclosure-independent canonical tuple otherwise.
        if self.is_pure():
            return hash(self.p)
        return hash((self.field.n, self.p.coeffs, self.q.coeffs, self.D.coeffs))

    def _cross_eq(self, o):
        # self = p1 + q1 sqrt(D1) with q1 != 0; substitute o into the minimal
        # quadratic of self over the base field, then match the root branch.
        p1, q1, D1 = self.p, self.q, self.D
        c1 = p1 * p1 - q1 * q1 * D1
        # o^2 - 2 p1 o + c1 = u + v sqrt(D2)
        u = o.p * o.p + o.q * o.q * o.D - 2 * p1 * o.p + c1
        v = 2 * o.p * o.q - 2 * p1 * o.q
        if v.is_zero():
            if not u.is_zero():
                return False
        else:
            su, sv = u.sign(), v.sign()
            if su == 0 or su == sv:
                return False
            if not (u * u - v * v * o.D).is_zero():
                return False
        # o is a root of the quadratic; same branch iff sign(o - p1) = sign(q1)
        branch = RealAlgebraic(o.p - p1, o.q, o.D).sign()
        return branch == q1.sign()

    def _cmp(self, other):
        o = self._coerce(other)
        if self._compatible(o):
            return (self - o).sign()
        if self._cross_eq(o):
            return 0
        bits = 32
        while True:
            a, b = self.enclosure(bits), o.enclosure(bits)
            if a.disjoint(b):
                return -1 if a.hi < b.lo else 1
            bits *= 2

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- numerics ------------------------------------------------------------

    def enclosure(self, bits=64):
        if self.is_pure():
            return self.p.enclosure(bits)
        ep = self.p.enclosure(bits)
        eq = self.q.enclosure(bits)
        eD = self.D.enclosure(bits)
        if eD.lo < 0:
            eD = Enclosure(Fraction(0), max(eD.hi, Fraction(0)))
        return ep + eq * eD.sqrt(bits)

    def __float__(self):
        return float(self.enclosure(64).mid())

    def __repr__(self):
        if self.is_pure():
            return f"RA({self.p!r})"
        return f"RA({self.p!r} + {self.q!r}*sqrt({self.D!r}))"

    def serialize(self):
        return {
            "n": self.field.n,
            "p": [str(c) for c in self.p.coeffs],
            "q": [str(c) for c in self.q.coeffs],
            "D": [str(c) for c in self.D.coeffs],
        }


def sign(x):
    if isinstance(x, (int, Fraction)):
        return 0 if x == 0 else (1 if x > 0 else -1)
    return x.sign()


def refine(x, bits):
    """Rational enclosure of width <= 2^-bits around x."""
    if bits < 1:
        raise ValueError("bits >= 1")
    if isinstance(x, (int, Fraction)):
        return Enclosure(x, x)
    b = max(bits, 8)
    while True:
        enc = x.enclosure(b)
        if enc.width() <= Fraction(1, 1 << bits):
            return enc
        b *= 2


def floor_of(x):
    """Exact floor, robust at integer boundaries."""
    if isinstance(x, (int, Fraction)):
        return _frac(x).__floor__()
    bits = 32
    while bits <= 512:
        enc = x.enclosure(bits)
        flo = enc.lo.__floor__()
        fhi = enc.hi.__floor__()
        if flo == fhi:
            return flo
        bits *= 2
    # the enclosure straddles an integer; decide by exact comparison
    enc = x.enclosure(512)
    m = enc.hi.__floor__()
    s = sign(x - m)
    if s >= 0:
        return m
    return m - 1


def decimal_string(x, digits):
    """Decimal rendering truncated toward zero; extra digits only append."""
    neg = sign(x) < 0
    mag = -x if neg else x
    scaled = floor_of(mag * Fraction(10**digits)) if not isinstance(mag, int) \
        else mag * 10**digits
    if scaled == 0:
        neg = False
    ip, fp = divmod(scaled, 10**digits)
    body = f"{ip}.{fp:0{digits}d}" if digits > 0 else f"{ip}"
    return ("-" if neg else "") + body


def quad_solve(a, b, c, selector):
    """Unique root of a*X^2 + b*X + c inside the selector interval.

    Returns a RealAlgebraic p + q*sqrt(D), D = b^2 - 4ac (normalized to the
    base field when D is a perfect square there).
    """
    field = None
    for z in (a, b, c):
        if isinstance(z, FieldElement):
            field = z.field
            break
    if field is None:
        raise TypeError("need at least one FieldElement coefficient")

    def fe(z):
        return z if isinstance(z, FieldElement) else field.from_rational(z)

    a, b, c = fe(a), fe(b), fe(c)
    if a.is_zero() and b.is_zero():
        raise ValueError("degenerate equation")
    if a.is_zero():
        roots = [RealAlgebraic.from_field(-c / b)]
    else:
        D = b * b - 4 * a * c
        sD = D.sign()
        if sD < 0:
            raise NegativeDiscriminantError("no real roots")
        p = -b / (2 * a)
        q = (2 * a).inverse()
        if sD == 0:
            roots = [RealAlgebraic.from_field(p)]
        else:
            roots = [RealAlgebraic.make(p, q, D), RealAlgebraic.make(p, -q, D)]
    inside = [r for r in roots
              if r >= selector.lo and r <= selector.hi]
    if not inside:
        raise NoRootInSelectorError(f"no root in [{selector.lo}, {selector.hi}]")
    if len(inside) == 2 and not (inside[0] - inside[1]).is_zero():
        raise TwoRootsInSelectorError("selector must be refined")
    return inside[0]


def field_for(m, n):
    """The smallest supported field containing 2cos(pi/m) and 2cos(pi/n)."""
    if m == 3:
        return NumberField(n)
    if n == 3:
        return NumberField(m)
    return NumberField(lcm(m, n))
