"""Exact arithmetic over F_{p^m}, its polynomial ring and its fraction field.

Field elements are encoded as integer codes: the element sum(c_i * g^i) with
c_i in F_p, where g is the class of the modulus variable, has code
sum(c_i * p^i).  All polynomial arithmetic runs on lists of codes through the
kernel backend, so a FieldCtx carries flat add/sub/mul tables and an inverse
table in `array.array('i')` form.
"""

import array
import math

from . import _kernels as K
from .errors import DomainError, ParseError

NEG_DEG = float("-inf")  # degree of the zero polynomial

_TABLE_CAP = 1024  # largest q for which full q*q tables are built


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# mod-p polynomial helpers used only to build field tables (coefficients are
# plain residues; no FieldCtx exists yet at this point)

def _pp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _pp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_divmod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    inv_lead = pow(g[-1], p - 2, p)
    quo = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and f:
        c = f[-1]
        if c:
            k = len(f) - 1 - dg
            factor = (c * inv_lead) % p
            quo[k] = factor
            for j, gj in enumerate(g):
                f[k + j] = (f[k + j] - factor * gj) % p
        f.pop()
    return quo, _pp_trim(f)


def _pp_irreducible(f, p):
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    deg = len(f) - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for n in range(p ** d):
            g = _int_digits(n, p, d) + [1]
            if not _pp_divmod(f, g, p)[1]:
                return False
    return True


def _int_digits(n, base, width):
    out = []
    for _ in range(width):
        out.append(n % base)
        n //= base
    return out


def default_modulus(p, m):
    """First monic irreducible of degree m over F_p, ordered by the integer
    whose base-p digits are the non-leading coefficients."""
    for n in range(p ** m):
        cand = _int_digits(n, p, m) + [1]
        if _pp_irreducible(cand, p):
            return cand
    raise DomainError("no irreducible polynomial found (p=%d, m=%d)" % (p, m))


class FieldCtx:
    """Arithmetic context for F_{p^m}; build with field_make()."""

    def __init__(self, p, m, modulus_coeffs):
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = list(modulus_coeffs)
        if self.q > _TABLE_CAP:
            raise DomainError(
                "field size %d exceeds the table cap %d" % (self.q, _TABLE_CAP)
            )
        self._build_tables()

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        vecs = [_int_digits(c, p, m) for c in range(q)]
        add_rows = []
        sub_rows = []
        mul_rows = []
        for a in range(q):
            va = vecs[a]
            arow_add = [0] * q
            arow_sub = [0] * q
            arow_mul = [0] * q
            pa = _pp_trim(list(va))
            for b in range(q):
                vb = vecs[b]
                arow_add[b] = sum(
                    ((va[i] + vb[i]) % p) * p ** i for i in range(m)
                )
                arow_sub[b] = sum(
                    ((va[i] - vb[i]) % p) * p ** i for i in range(m)
                )
                prod = _pp_mul(pa, _pp_trim(list(vb)), p)
                if len(prod) >= m:
                    prod = _pp_divmod(prod, self.modulus, p)[1]
                arow_mul[b] = sum(c * p ** i for i, c in enumerate(prod))
            add_rows.extend(arow_add)
            sub_rows.extend(arow_sub)
            mul_rows.extend(arow_mul)
        self.add_t = array.array("i", add_rows)
        self.sub_t = array.array("i", sub_rows)
        self.mul_t = array.array("i", mul_rows)
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_t[a * q + b] == 1:
                    inv[a] = b
                    break
            else:
                raise DomainError("modulus is not irreducible (no inverse)")
        self.inv_t = array.array("i", inv)
        self.neg_t = array.array("i", [self.sub_t[b] for b in range(q)])

    # scalar code arithmetic ------------------------------------------------
    def add(self, a, b):
        return self.add_t[a * self.q + b]

    def sub(self, a, b):
        return self.sub_t[a * self.q + b]

    def mul(self, a, b):
        return self.mul_t[a * self.q + b]

    def neg(self, a):
        return self.neg_t[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return self.inv_t[a]

    def elem(self, value):
        """Coerce to a field element; plain ints embed through the prime
        subfield (use FieldElem(ctx, code) for code-level construction)."""
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise DomainError("element from a different field context")
            return value
        return FieldElem(self, int(value) % self.p)

    def elem_from_vector(self, coeffs):
        code = 0
        for i, c in enumerate(coeffs):
            code += (int(c) % self.p) * self.p ** i
        return FieldElem(self, code)

    def elements(self):
        return [FieldElem(self, c) for c in range(self.q)]

    def code_str(self, code):
        """Literal for a field code: plain residue for prime fields,
        a polynomial in g otherwise."""
        if self.m == 1:
            return str(code)
        digits = _int_digits(code, self.p, self.m)
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = digits[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                gpow = "g" if i == 1 else "g^%d" % i
                terms.append(gpow if c == 1 else "%d*%s" % (c, gpow))
        if not terms:
            return "0"
        return "+".join(terms)

    def __repr__(self):
        return "FieldCtx(p=%d, m=%d)" % (self.p, self.m)


def field_make(p, m=1, modulus=None):
    """Build F_{p^m}.  `modulus` is a monic irreducible of degree m over F_p,
    given as a coefficient list (low degree first) or a Poly over F_p; the
    lexicographically least irreducible is chosen when omitted."""
    if not _is_prime(p):
        raise DomainError("p=%d is not prime" % p)
    if m < 1:
        raise DomainError("m must be positive")
    if modulus is None:
        coeffs = default_modulus(p, m)
    else:
        if isinstance(modulus, Poly):
            if modulus.ctx.q != p:
                raise DomainError("modulus must have prime-field coefficients")
            coeffs = list(modulus.coeffs)
        else:
            coeffs = [int(c) % p for c in modulus]
        coeffs = _pp_trim(list(coeffs))
        if len(coeffs) - 1 != m:
            raise DomainError("modulus degree %d != m=%d" % (len(coeffs) - 1, m))
        if coeffs[-1] != 1:
            raise DomainError("modulus must be monic")
        if not _pp_irreducible(coeffs, p):
            raise DomainError("modulus is reducible over F_%d" % p)
    return FieldCtx(p, m, coeffs)


class FieldElem:
    """Element of F_{p^m}, a thin wrapper over its integer code."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx, code):
        self.ctx = ctx
        self.code = code % ctx.q

    def vector(self):
        return _int_digits(self.code, self.ctx.p, self.ctx.m)

    def __add__(self, other):
        other = self.ctx.elem(other)
        return FieldElem(self.ctx, self.ctx.add(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.ctx.elem(other)
        return FieldElem(self.ctx, self.ctx.sub(self.code, other.code))

    def __rsub__(self, other):
        return self.ctx.elem(other) - self

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        other = self.ctx.elem(other)
        return FieldElem(self.ctx, self.ctx.mul(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self.ctx.elem(other)
        return self * FieldElem(self.ctx, self.ctx.inv(other.code))

    def __rtruediv__(self, other):
        return self.ctx.elem(other) / self

    def __pow__(self, n):
        if n < 0:
            return (FieldElem(self.ctx, self.ctx.inv(self.code))) ** (-n)
        out = FieldElem(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx is other.ctx and self.code == other.code
        if isinstance(other, int):
            return self == self.ctx.elem(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.code))

    def __repr__(self):
        return self.ctx.code_str(self.code)


def code_of(ctx, c):
    """Coefficient coercion: FieldElem -> its code; an int in [0, q) is taken
    as a code (for prime fields that equals the residue); anything else
    embeds through the prime subfield."""
    if isinstance(c, FieldElem):
        if c.ctx is not ctx:
            raise DomainError("element from a different field context")
        return c.code
    c = int(c)
    if 0 <= c < ctx.q:
        return c
    return c % ctx.p


class Poly:
    """Dense polynomial over a FieldCtx, coefficients stored as codes."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=(), normalize=True):
        self.ctx = ctx
        cs = [code_of(ctx, c) for c in coeffs]
        if normalize:
            while cs and cs[-1] == 0:
                cs.pop()
        self.coeffs = cs

    @classmethod
    def _raw(cls, ctx, codes):
        """Internal constructor: `codes` is a fresh list of valid codes."""
        self = cls.__new__(cls)
        self.ctx = ctx
        while codes and codes[-1] == 0:
            codes.pop()
        self.coeffs = codes
        return self

    @staticmethod
    def zero(ctx):
        return Poly(ctx, [])

    @staticmethod
    def one(ctx):
        return Poly(ctx, [1])

    @staticmethod
    def const(ctx, c):
        return Poly(ctx, [code_of(ctx, c)])

    @staticmethod
    def x(ctx):
        return Poly(ctx, [0, 1])

    @staticmethod
    def monomial(ctx, k, c=1):
        return Poly(ctx, [0] * k + [code_of(ctx, c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_DEG

    def is_zero(self):
        return not self.coeffs

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def lead(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        add_t, q = ctx.add_t, ctx.q
        for i, c in enumerate(b):
            out[i] = add_t[out[i] * q + c]
        return Poly._raw(ctx, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        ctx = self.ctx
        return Poly._raw(ctx, [ctx.neg_t[c] for c in self.coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        return Poly._raw(ctx, K.poly_mul(self.coeffs, other.coeffs, ctx.q,
                                         ctx.mul_t, ctx.add_t))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return RatFunc(self, self._coerce(other))

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        out = Poly.one(self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx is not self.ctx:
                raise DomainError("mixed field contexts")
            return other
        if isinstance(other, (int, FieldElem)):
            # arithmetic coercion embeds ints through the prime subfield
            return Poly.const(self.ctx, self.ctx.elem(other))
        return NotImplemented

    def divmod(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        ctx = self.ctx
        quo, rem = K.poly_divmod(self.coeffs, other.coeffs, ctx.q,
                                 ctx.mul_t, ctx.sub_t, ctx.inv_t)
        return Poly._raw(ctx, quo), Poly._raw(ctx, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        quo, rem = self.divmod(other)
        if not rem.is_zero():
            raise DomainError("inexact polynomial division")
        return quo

    def monic(self):
        if self.is_zero():
            return self
        ctx = self.ctx
        inv = ctx.inv(self.coeffs[-1])
        return Poly._raw(ctx, [ctx.mul(c, inv) for c in self.coeffs])

    def gcd(self, other):
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        ctx = self.ctx
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(ctx.mul(self.coeffs[i], i % ctx.p))
        return Poly._raw(ctx, out)

    def shift(self, k):
        """Multiply by x^k (k >= 0)."""
        if self.is_zero():
            return self
        return Poly._raw(self.ctx, [0] * k + list(self.coeffs))

    def eval(self, value):
        """Horner evaluation; `value` may be a FieldElem, Poly or RatFunc."""
        if isinstance(value, FieldElem):
            acc = FieldElem(self.ctx, 0)
            for c in reversed(self.coeffs):
                acc = acc * value + FieldElem(self.ctx, c)
            return acc
        acc = None
        for c in reversed(self.coeffs):
            term = Poly.const(self.ctx, c)
            acc = term if acc is None else acc * value + term
        if acc is None:
            return Poly.zero(self.ctx)
        return acc

    def val_at_zero(self):
        """Order of vanishing at x=0 (NEG_DEG convention: +inf for 0)."""
        if self.is_zero():
            return math.inf
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return math.inf

    def reverse(self, width=None):
        """Coefficient reversal x^d * f(1/x), padded to `width` if given."""
        if width is None:
            width = len(self.coeffs)
        cs = list(self.coeffs) + [0] * (width - len(self.coeffs))
        return Poly._raw(self.ctx, cs[::-1])

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElem)):
            return self == Poly.const(self.ctx, self.ctx.elem(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), tuple(self.coeffs)))

    def __bool__(self):
        return bool(self.coeffs)

    def to_string(self, var="z"):
        ctx = self.ctx
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = ctx.code_str(c)
            if i == 0:
                terms.append(cs if ("+" not in cs) else "(%s)" % cs)
                continue
            vp = var if i == 1 else "%s^%d" % (var, i)
            if c == 1:
                terms.append(vp)
            elif "+" in cs:
                terms.append("(%s)*%s" % (cs, vp))
            else:
                terms.append("%s*%s" % (cs, vp))
        return "+".join(terms)

    def __repr__(self):
        return self.to_string()


class RatFunc:
    """Rational function in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if isinstance(num, RatFunc):
            if den is not None:
                raise DomainError("RatFunc(num, den) expects polynomials")
            self.num, self.den = num.num, num.den
            return
        ctx = num.ctx
        if den is None:
            den = Poly.one(ctx)
        if isinstance(den, RatFunc):
            r = RatFunc(num) / den
            self.num, self.den = r.num, r.den
            return
        if den.is_zero():
            raise DomainError("zero denominator")
        if reduce:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.lead()
            if lead != 1:
                inv = ctx.inv(lead)
                num = Poly._raw(ctx, [ctx.mul(c, inv) for c in num.coeffs])
                den = Poly._raw(ctx, [ctx.mul(c, inv) for c in den.coeffs])
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    @staticmethod
    def zero(ctx):
        return RatFunc(Poly.zero(ctx))

    @staticmethod
    def one(ctx):
        return RatFunc(Poly.one(ctx))

    @staticmethod
    def const(ctx, c):
        return RatFunc(Poly.const(ctx, code_of(ctx, c)))

    @staticmethod
    def x(ctx):
        return RatFunc(Poly.x(ctx))

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.degree == 0

    def as_poly(self):
        if not self.is_poly():
            raise DomainError("not a polynomial: %s" % self)
        return self.num

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ctx is not self.ctx:
                raise DomainError("mixed field contexts")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, FieldElem)):
            return RatFunc.const(self.ctx, self.ctx.elem(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return (RatFunc.one(self.ctx) / self) ** (-n)
        out = RatFunc.one(self.ctx)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def compose(self, inner):
        """self(inner) for a rational inner function."""
        inner = self._coerce(inner)
        num = self.num.eval(inner)
        den = self.den.eval(inner)
        if isinstance(num, Poly):
            num = RatFunc(num)
        if isinstance(den, Poly):
            den = RatFunc(den)
        return num / den

    def val_z(self):
        """Order at z=0 (the v_z valuation); +inf for 0."""
        if self.is_zero():
            return math.inf
        return self.num.val_at_zero() - self.den.val_at_zero()

    def val_deg(self):
        """-deg(x), the valuation at the infinite place; +inf for 0."""
        if self.is_zero():
            return math.inf
        return self.den.degree - self.num.degree

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def key(self):
        """Canonical hashable key (lowest terms, monic denominator)."""
        return (tuple(self.num.coeffs), tuple(self.den.coeffs))

    def to_string(self, var="z"):
        if self.den.degree == 0:
            return self.num.to_string(var)
        return "(%s)/(%s)" % (self.num.to_string(var), self.den.to_string(var))

    def __repr__(self):
        return self.to_string()


def poly_divmod(f, g):
    """f = q*g + r with deg r < deg g."""
    return f.divmod(g)


def val_p(x, P):
    """P-adic valuation of a rational function, P irreducible."""
    if isinstance(x, Poly):
        x = RatFunc(x)
    if not _poly_irreducible(P):
        raise DomainError("valuation base %s is reducible" % P)
    if x.is_zero():
        return math.inf
    return _p_count(x.num, P) - _p_count(x.den, P)


def _p_count(f, P):
    count = 0
    while True:
        quo, rem = f.divmod(P)
        if not rem.is_zero():
            return count
        f = quo
        count += 1
        if f.is_zero():
            return count


def _poly_irreducible(P):
    """Irreducibility over F_{p^m} by trial division (small fields only)."""
    if P.degree < 1:
        return False
    ctx = P.ctx
    half = int(P.degree) // 2
    for d in range(1, half + 1):
        for n in range(ctx.q ** d):
            g = Poly(ctx, _int_digits(n, ctx.q, d) + [1])
            if (P % g).is_zero():
                return False
    return True


def rat_degree(x):
    """Degree of the rational map z -> x(z): max(deg num, deg den) in lowest
    terms.  Errors on constants (the map degree is not defined there)."""
    if isinstance(x, Poly):
        x = RatFunc(x)
    if x.num.degree <= 0 and x.den.degree <= 0:
        raise DomainError("rat_degree of a constant is undefined")
    return max(int(x.num.degree), int(x.den.degree))


# ---------------------------------------------------------------------------
# generic dense polynomials over a duck-typed coefficient field (used for
# towers like F_q(t)[w]); coefficients need +, -, *, /, bool()

class GenPoly:
    __slots__ = ("coeffs", "zero_c", "one_c")

    def __init__(self, coeffs, zero_c, one_c):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs
        self.zero_c = zero_c
        self.one_c = one_c

    def _make(self, coeffs):
        return GenPoly(coeffs, self.zero_c, self.one_c)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_DEG

    def is_zero(self):
        return not self.coeffs

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.zero_c

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return self._make(out)

    def __sub__(self, other):
        out = list(self.coeffs) + [self.zero_c] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = out[i] - c
        return self._make(out)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return self._make([])
        out = [self.zero_c] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return self._make(out)

    def scale(self, c):
        return self._make([a * c for a in self.coeffs])

    def divmod(self, other):
        if other.is_zero():
            raise DomainError("division by zero polynomial")
        rem = list(self.coeffs)
        dg = len(other.coeffs) - 1
        if len(rem) - 1 < dg:
            return self._make([]), self._make(rem)
        inv_lead = self.one_c / other.coeffs[-1]
        quo = [self.zero_c] * (len(rem) - dg)
        for top in range(len(rem) - 1, dg - 1, -1):
            c = rem[top]
            if not c:
                continue
            factor = c * inv_lead
            shift = top - dg
            quo[shift] = factor
            for j, gj in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - factor * gj
        return self._make(quo), self._make(rem[:dg])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if self.is_zero():
            return self
        inv = self.one_c / self.coeffs[-1]
        return self.scale(inv)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self, char):
        out = []
        for i in range(1, len(self.coeffs)):
            k = i % char
            c = self.coeffs[i]
            term = self.zero_c
            for _ in range(k):
                term = term + c
            out.append(term)
        return self._make(out)

    def powmod(self, n, modulus):
        out = self._make([self.one_c])
        base = self % modulus
        while n:
            if n & 1:
                out = (out * base) % modulus
            base = (base * base) % modulus
            n >>= 1
        return out
