"""Lazy Laurent-series streams, dense truncated Laurent arithmetic, and
construction of algebraic series by Newton lifting from a defining bivariate
polynomial.

Two orientations share one representation.  An ascending stream indexes the
coefficient of z^n by n (elements of F_q((z))); a descending stream indexes
the coefficient of z^(-n) by n (elements of F_q((1/z)), so the "degree" of a
term is -n).  In both cases `val` is the index of the first possibly-nonzero
coefficient and coefficients below it are exactly zero.
"""

import math

from . import _kernels as K
from .algebra import Poly, RatFunc, code_of
from .errors import DomainError, ParseError, ZeroScanError
from . import parsing

DEFAULT_ZERO_SCAN = 1024


class LaurentStream:
    """Memoized lazy coefficient stream; `fn(n)` may consult lower indices
    of the stream itself (they are already forced when fn runs)."""

    __slots__ = ("ctx", "orientation", "val", "_fn", "_coeffs")

    def __init__(self, ctx, orientation, val, fn):
        if orientation not in ("asc", "desc"):
            raise DomainError("orientation must be 'asc' or 'desc'")
        self.ctx = ctx
        self.orientation = orientation
        self.val = val
        self._fn = fn
        self._coeffs = []

    # -- forcing ------------------------------------------------------------
    def _ensure(self, n):
        while self.val + len(self._coeffs) <= n:
            self._coeffs.append(self._fn(self.val + len(self._coeffs)))

    def coeff(self, n):
        if n < self.val:
            return 0
        self._ensure(n)
        return self._coeffs[n - self.val]

    def prefix(self, n):
        """Codes for indices val..n-1."""
        if n <= self.val:
            return []
        self._ensure(n - 1)
        return self._coeffs[: n - self.val]

    def forced_upto(self):
        return self.val + len(self._coeffs)

    # -- constructors ---------------------------------------------------------
    @staticmethod
    def zero(ctx, orientation="asc"):
        return LaurentStream(ctx, orientation, 0, lambda n: 0)

    @staticmethod
    def from_codes(ctx, orientation, val, codes, tail=None):
        codes = list(codes)

        def fn(n):
            k = n - val
            if k < len(codes):
                return codes[k]
            return 0 if tail is None else tail(n)

        return LaurentStream(ctx, orientation, val, fn)

    @staticmethod
    def from_poly(poly, orientation="asc"):
        ctx = poly.ctx
        if orientation == "asc":
            return LaurentStream.from_codes(ctx, "asc", 0, list(poly.coeffs))
        # z^j contributes at descending index -j
        deg = int(poly.degree) if not poly.is_zero() else 0
        codes = [0] * (deg + 1)
        for j, c in enumerate(poly.coeffs):
            codes[deg - j] = c
        return LaurentStream.from_codes(ctx, "desc", -deg, codes)

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, LaurentStream):
            raise DomainError("expected a stream")
        if other.ctx is not self.ctx or other.orientation != self.orientation:
            raise DomainError("streams from different models")

    def __add__(self, other):
        other = as_stream(other, self.orientation, self.ctx)
        self._check(other)
        ctx = self.ctx
        val = min(self.val, other.val)
        return LaurentStream(
            ctx, self.orientation, val,
            lambda n: ctx.add(self.coeff(n), other.coeff(n)))

    __radd__ = __add__

    def __sub__(self, other):
        other = as_stream(other, self.orientation, self.ctx)
        self._check(other)
        ctx = self.ctx
        val = min(self.val, other.val)
        return LaurentStream(
            ctx, self.orientation, val,
            lambda n: ctx.sub(self.coeff(n), other.coeff(n)))

    def __rsub__(self, other):
        return as_stream(other, self.orientation, self.ctx) - self

    def __neg__(self):
        ctx = self.ctx
        return LaurentStream(ctx, self.orientation, self.val,
                             lambda n: ctx.neg(self.coeff(n)))

    def __mul__(self, other):
        other = as_stream(other, self.orientation, self.ctx)
        self._check(other)
        return stream_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c):
        ctx = self.ctx
        code = code_of(ctx, c)
        return LaurentStream(ctx, self.orientation, self.val,
                             lambda n: ctx.mul(self.coeff(n), code))

    def shift(self, k):
        """Multiply by uniformizer^k (index shift by k)."""
        return LaurentStream(self.ctx, self.orientation, self.val + k,
                             lambda n: self.coeff(n - k))

    def pow_q(self, i=1):
        """Frobenius power f^(q^i): over F_q the codes are fixed and spread
        to indices divisible by q^i."""
        step = self.ctx.q ** i
        val = self.val * step

        def fn(n):
            rel = n - val
            if rel % step:
                return 0
            return self.coeff(self.val + rel // step)

        return LaurentStream(self.ctx, self.orientation, val, fn)

    def true_valuation(self, scan_depth=DEFAULT_ZERO_SCAN):
        """Index of the first nonzero coefficient; ZeroScanError if the
        stream is indistinguishable from 0 to the scan depth."""
        for n in range(self.val, self.val + scan_depth):
            if self.coeff(n):
                return n
        raise ZeroScanError(scan_depth)

    def __repr__(self):
        shown = min(self.forced_upto(), self.val + 8)
        codes = [self.coeff(n) for n in range(self.val, max(self.val, shown))]
        return "LaurentStream(%s, %s)" % (
            self.orientation,
            parsing.format_series_prefix(self.val, codes, self.ctx))


def as_stream(x, orientation, ctx):
    """Coerce a value to a LaurentStream in the given orientation."""
    if isinstance(x, LaurentStream):
        return x
    if isinstance(x, RatFunc):
        return from_ratfunc_stream(x, orientation)
    if isinstance(x, Poly):
        return LaurentStream.from_poly(x, orientation)
    if isinstance(x, int):
        return LaurentStream.from_codes(ctx, orientation, 0,
                                        [code_of(ctx, ctx.elem(x))])
    raise DomainError("cannot interpret %r as a series" % (x,))


def stream_add(a, b):
    return a + b


def stream_mul(a, b):
    ctx = a.ctx
    val = a.val + b.val

    def fn(n):
        rel = n - val
        av = a.prefix(a.val + rel + 1)
        bv = b.prefix(b.val + rel + 1)
        return K.conv_coeff(av, bv, rel, ctx.q, ctx.mul_t, ctx.add_t)

    return LaurentStream(ctx, a.orientation, val, fn)


def stream_inv(a, scan_depth=DEFAULT_ZERO_SCAN):
    """Multiplicative inverse; scans for the first nonzero coefficient and
    reports the scanned depth if none is found."""
    ctx = a.ctx
    v0 = a.true_valuation(scan_depth)
    u0_inv = ctx.inv(a.coeff(v0))
    out_val = -v0
    out = LaurentStream(ctx, a.orientation, out_val, None)

    def fn(n):
        rel = n - out_val
        if rel == 0:
            return u0_inv
        # c_rel = -u0^{-1} * sum_{k=1..rel} u_k c_{rel-k}
        uv = a.prefix(v0 + rel + 1)[1 + (v0 - a.val):]
        # uv = codes of u_1..u_rel where u_k = a.coeff(v0+k)
        acc = K.conv_coeff(uv, out._coeffs, rel - 1, ctx.q, ctx.mul_t,
                           ctx.add_t)
        return ctx.neg(ctx.mul(u0_inv, acc))

    out._fn = fn
    return out


def stream_eq(a, b, n):
    """True iff all coefficients at indices <= n agree (the only equality
    notion offered; semantic equality of lazy streams is undecidable)."""
    if a.ctx is not b.ctx or a.orientation != b.orientation:
        return False
    for k in range(min(a.val, b.val), n + 1):
        if a.coeff(k) != b.coeff(k):
            return False
    return True


# ---------------------------------------------------------------------------
# rational functions -> streams

def _series_div_stream(ctx, orientation, val, num_codes, den_codes):
    """Stream for z^val * (num/den) with den[0] != 0, as lazy recurrence."""
    d0_inv = ctx.inv(den_codes[0])
    out = LaurentStream(ctx, orientation, val, None)
    den_tail = den_codes[1:]

    def fn(n):
        rel = n - val
        uk = num_codes[rel] if rel < len(num_codes) else 0
        acc = K.conv_coeff(den_tail, out._coeffs, rel - 1, ctx.q, ctx.mul_t,
                           ctx.add_t) if rel > 0 else 0
        return ctx.mul(d0_inv, ctx.sub(uk, acc))

    out._fn = fn
    return out


def from_ratfunc_stream(x, orientation="asc"):
    """Image of a rational function in F_q((z)) (asc) or F_q((1/z)) (desc)."""
    ctx = x.ctx
    if x.is_zero():
        return LaurentStream.zero(ctx, orientation)
    num, den = x.num, x.den
    if orientation == "asc":
        a = num.val_at_zero()
        b = den.val_at_zero()
        ncodes = num.coeffs[a:]
        dcodes = den.coeffs[b:]
        return _series_div_stream(ctx, "asc", a - b, ncodes, dcodes)
    # descending: substitute t = 1/z by reversing coefficient order
    du, dw = int(num.degree), int(den.degree)
    ncodes = num.coeffs[::-1]
    dcodes = den.coeffs[::-1]
    return _series_div_stream(ctx, "desc", dw - du, ncodes, dcodes)


def from_ratfunc(x, model, P=None, orientation_hint=None):
    """Expansion of a rational function in the chosen completion:
    model 'vz' -> ascending stream, 'vdeg' -> descending stream,
    'vp' -> PiAdicStream for the irreducible base P."""
    if model == "vz":
        return from_ratfunc_stream(x, "asc")
    if model == "vdeg":
        return from_ratfunc_stream(x, "desc")
    if model == "vp":
        if P is None:
            raise DomainError("model 'vp' needs the base polynomial P")
        return PiAdicStream.from_ratfunc(x, P)
    raise DomainError("unknown model %r" % model)


# ---------------------------------------------------------------------------
# dense truncated Laurent values (internal work horse for Newton lifting and
# constant-term extraction); prec is exclusive and may be math.inf for exact
# polynomial values

class DenseLaurent:
    __slots__ = ("ctx", "val", "codes", "prec")

    def __init__(self, ctx, val, codes, prec):
        codes = list(codes)
        # leading zeros carry no information; a tight val keeps the product
        # precision rules sharp
        lead = 0
        while lead < len(codes) and codes[lead] == 0:
            lead += 1
        if lead:
            codes = codes[lead:]
            val += lead
        if prec is not math.inf and val > prec:
            val = prec
        self.ctx = ctx
        self.val = val
        self.codes = codes
        self.prec = prec
        if prec is not math.inf:
            want = prec - val
            if want < 0:
                raise DomainError("empty precision window")
            del self.codes[want:]
            self.codes.extend([0] * (want - len(self.codes)))

    @staticmethod
    def exact(ctx, val, codes):
        codes = list(codes)
        while codes and codes[-1] == 0:
            codes.pop()
        return DenseLaurent(ctx, val, codes, math.inf)

    @staticmethod
    def from_poly(poly, orientation="asc"):
        if orientation == "asc":
            return DenseLaurent.exact(poly.ctx, 0, list(poly.coeffs))
        deg = int(poly.degree) if not poly.is_zero() else 0
        codes = [0] * (deg + 1)
        for j, c in enumerate(poly.coeffs):
            codes[deg - j] = c
        return DenseLaurent.exact(poly.ctx, -deg, codes)

    def coeff(self, n):
        if n < self.val:
            return 0
        if n - self.val >= len(self.codes):
            if self.prec is math.inf:
                return 0
            raise DomainError("coefficient %d beyond precision %s" % (n, self.prec))
        return self.codes[n - self.val]

    def truncate(self, prec):
        if prec >= self.prec:
            return self
        return DenseLaurent(self.ctx, self.val, self.codes, prec)

    def true_val(self):
        """Index of first nonzero coefficient, or None if zero to precision."""
        for i, c in enumerate(self.codes):
            if c:
                return self.val + i
        return None

    def is_zero_to_prec(self):
        return self.true_val() is None

    def __add__(self, other):
        ctx = self.ctx
        val = min(self.val, other.val)
        prec = min(self.prec, other.prec)
        if prec is math.inf:
            length = max(self.val + len(self.codes),
                         other.val + len(other.codes)) - val
        else:
            length = prec - val
        out = [0] * length
        for src in (self, other):
            off = src.val - val
            for i, c in enumerate(src.codes):
                if c and off + i < length:
                    out[off + i] = ctx.add(out[off + i], c)
        return DenseLaurent(ctx, val, out,
                            prec if prec is not math.inf else math.inf)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        ctx = self.ctx
        return DenseLaurent(ctx, self.val, [ctx.neg(c) for c in self.codes],
                            self.prec)

    def __mul__(self, other):
        ctx = self.ctx
        val = self.val + other.val
        if self.prec is math.inf and other.prec is math.inf:
            prec = math.inf
        elif self.prec is math.inf:
            prec = other.prec + self.val
        elif other.prec is math.inf:
            prec = self.prec + other.val
        else:
            prec = min(self.prec + other.val, other.prec + self.val)
        codes = K.poly_mul(self.codes, other.codes, ctx.q, ctx.mul_t,
                           ctx.add_t)
        return DenseLaurent(ctx, val, codes, prec)

    def scale(self, code):
        ctx = self.ctx
        return DenseLaurent(ctx, self.val,
                            [ctx.mul(c, code) for c in self.codes], self.prec)

    def shift(self, k):
        return DenseLaurent(self.ctx, self.val + k, self.codes,
                            self.prec if self.prec is math.inf
                            else self.prec + k)

    def inv(self):
        """Inverse to the precision supported by this window."""
        ctx = self.ctx
        v0 = self.true_val()
        if v0 is None:
            raise DomainError("inverse of a (to-precision) zero value")
        u = self.codes[v0 - self.val:]
        if self.prec is math.inf:
            raise DomainError("exact Laurent inverse needs a finite precision"
                              " cutoff; truncate first")
        length = self.prec - v0
        out = [0] * length
        u0_inv = ctx.inv(u[0])
        out[0] = u0_inv
        tail = u[1:]
        for rel in range(1, length):
            acc = K.conv_coeff(tail, out, rel - 1, ctx.q, ctx.mul_t, ctx.add_t)
            out[rel] = ctx.neg(ctx.mul(u0_inv, acc))
        return DenseLaurent(ctx, -v0, out, length - v0)

    def to_stream(self, orientation):
        return LaurentStream.from_codes(self.ctx, orientation, self.val,
                                        list(self.codes))

    def __repr__(self):
        return "DenseLaurent(val=%s, prec=%s, %s)" % (
            self.val, self.prec, self.codes[:12])


# ---------------------------------------------------------------------------
# bivariate polynomials R(z, w)

class BivarPoly:
    """Polynomial in w whose coefficients are polynomials in z."""

    __slots__ = ("ctx", "wcoeffs")

    def __init__(self, ctx, wcoeffs):
        ws = list(wcoeffs)
        while ws and ws[-1].is_zero():
            ws.pop()
        self.ctx = ctx
        self.wcoeffs = ws

    @staticmethod
    def const(ctx, poly):
        return BivarPoly(ctx, [poly])

    @staticmethod
    def w(ctx):
        return BivarPoly(ctx, [Poly.zero(ctx), Poly.one(ctx)])

    @staticmethod
    def z(ctx):
        return BivarPoly(ctx, [Poly.x(ctx)])

    @property
    def degree_w(self):
        return len(self.wcoeffs) - 1 if self.wcoeffs else -1

    def is_zero(self):
        return not self.wcoeffs

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.wcoeffs), len(other.wcoeffs))
        out = []
        for i in range(n):
            a = self.wcoeffs[i] if i < len(self.wcoeffs) else Poly.zero(self.ctx)
            b = other.wcoeffs[i] if i < len(other.wcoeffs) else Poly.zero(self.ctx)
            out.append(a + b)
        return BivarPoly(self.ctx, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return BivarPoly(self.ctx, [-c for c in self.wcoeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return BivarPoly(self.ctx, [])
        out = [Poly.zero(self.ctx)
               for _ in range(len(self.wcoeffs) + len(other.wcoeffs) - 1)]
        for i, a in enumerate(self.wcoeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.wcoeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BivarPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = BivarPoly.const(self.ctx, Poly.one(self.ctx))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.degree_w == 0 and other.wcoeffs[0].degree == 0:
            inv = self.ctx.inv(other.wcoeffs[0].coeff(0))
            return self * BivarPoly.const(self.ctx, Poly.const(self.ctx, inv))
        raise DomainError("bivariate division is only defined by constants")

    def _coerce(self, other):
        if isinstance(other, BivarPoly):
            return other
        if isinstance(other, Poly):
            return BivarPoly.const(self.ctx, other)
        if isinstance(other, int):
            return BivarPoly.const(self.ctx,
                                   Poly.const(self.ctx, self.ctx.elem(other)))
        raise DomainError("cannot coerce %r to a bivariate polynomial" % (other,))

    def deriv_w(self):
        ctx = self.ctx
        out = []
        for j in range(1, len(self.wcoeffs)):
            out.append(self.wcoeffs[j] * ctx.elem(j % ctx.p))
        return BivarPoly(ctx, out)

    def eval_dense(self, f, orientation):
        """Horner evaluation at a DenseLaurent value, z interpreted per the
        orientation (z itself ascending, 1/t descending)."""
        consts = [DenseLaurent.from_poly(c, orientation) for c in self.wcoeffs]
        if not consts:
            return DenseLaurent.exact(self.ctx, 0, [])
        acc = consts[-1]
        for j in range(len(consts) - 2, -1, -1):
            acc = acc * f + consts[j]
        return acc

    def eval_stream(self, f):
        """Horner evaluation at a LaurentStream."""
        orientation = f.orientation
        consts = [LaurentStream.from_poly(c, orientation)
                  for c in self.wcoeffs]
        if not consts:
            return LaurentStream.zero(self.ctx, orientation)
        acc = consts[-1]
        for j in range(len(consts) - 2, -1, -1):
            acc = acc * f + consts[j]
        return acc

    def eval_ratfunc(self, value):
        """Evaluation at a rational function (exact)."""
        acc = RatFunc.zero(self.ctx)
        for c in reversed(self.wcoeffs):
            acc = acc * value + RatFunc(c)
        return acc

    def to_string(self):
        if not self.wcoeffs:
            return "0"
        terms = []
        for j, c in enumerate(self.wcoeffs):
            if c.is_zero():
                continue
            cs = c.to_string()
            if j == 0:
                terms.append(cs)
                continue
            wp = "w" if j == 1 else "w^%d" % j
            if cs == "1":
                terms.append(wp)
            elif "+" in cs or "*" in cs:
                terms.append("(%s)*%s" % (cs, wp))
            else:
                terms.append("%s*%s" % (cs, wp))
        return "+".join(terms)

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self.ctx is other.ctx and [c.coeffs for c in self.wcoeffs] == \
            [c.coeffs for c in other.wcoeffs]

    def __repr__(self):
        return self.to_string()


def parse_bivar(text, ctx):
    """Parse a bivariate polynomial literal in variables z and w."""
    atoms = {"z": BivarPoly.z(ctx), "w": BivarPoly.w(ctx)}
    if ctx.m > 1:
        atoms["g"] = BivarPoly.const(ctx, Poly(ctx, [ctx.p]))
    one = BivarPoly.const(ctx, Poly.one(ctx))
    value = parsing.eval_expr(text, atoms, one)
    if not isinstance(value, BivarPoly):
        raise ParseError("expression %r is not a bivariate polynomial" % text)
    return value


# ---------------------------------------------------------------------------
# algebraic series

class AlgebraicSpec:
    """Defining data for one branch of an algebraic series: a bivariate
    relation R(z, w) = 0 plus a finite seed prefix that pins the branch."""

    __slots__ = ("ctx", "R", "orientation", "seed_val", "seed_codes")

    def __init__(self, ctx, R, seed_val, seed_codes, orientation="asc"):
        self.ctx = ctx
        self.R = R
        self.orientation = orientation
        self.seed_val = seed_val
        self.seed_codes = [code_of(ctx, c) for c in seed_codes]

    @staticmethod
    def from_strings(ctx, R_text, seed_text, orientation="asc"):
        R = parse_bivar(R_text, ctx)
        seed_val, seed_codes = parsing.parse_series_prefix(seed_text, ctx)
        return AlgebraicSpec(ctx, R, seed_val, seed_codes, orientation)

    @staticmethod
    def from_ratfunc(x, orientation="asc"):
        """Degree-one relation den*w - num = 0 for a rational value; the
        seed is grown until it pins the (unique) branch."""
        ctx = x.ctx
        R = BivarPoly(ctx, [-x.num, x.den])
        stream = from_ratfunc_stream(x, orientation)
        length = 2
        while True:
            seed_codes = stream.prefix(stream.val + length)
            spec = AlgebraicSpec(ctx, R, stream.val, seed_codes, orientation)
            try:
                _NewtonLifter(spec)
            except DomainError:
                length *= 2
                if length > 256:
                    raise
                continue
            return spec

    def to_json_dict(self):
        return {
            "R": self.R.to_string(),
            "seed": parsing.format_series_prefix(self.seed_val,
                                                 self.seed_codes, self.ctx),
            "model": self.orientation,
        }

    def __repr__(self):
        return "AlgebraicSpec(R=%s, seed=%s, %s)" % (
            self.R.to_string(),
            parsing.format_series_prefix(self.seed_val, self.seed_codes,
                                         self.ctx),
            self.orientation)


class _NewtonLifter:
    """Iteratively refines a dense approximation of the root pinned by an
    AlgebraicSpec.  Every step measures the actual residual valuation, so a
    failure to converge is detected rather than assumed away."""

    def __init__(self, spec):
        self.spec = spec
        self.ctx = spec.ctx
        self.Rw = spec.R.deriv_w()
        seed_prec = spec.seed_val + len(spec.seed_codes)
        # the approximant is always an exact Laurent polynomial, so residual
        # valuations below are exact measurements, not estimates
        f = DenseLaurent.exact(self.ctx, spec.seed_val, spec.seed_codes)
        rw = self.Rw.eval_dense(f, spec.orientation)
        vw = rw.true_val()
        if vw is None:
            raise DomainError("multiple root: dR/dw vanishes at the seed")
        rf = self.spec.R.eval_dense(f, spec.orientation)
        v_res = rf.true_val()
        self.vw = vw
        self.f = f
        if v_res is None:
            self.known = math.inf  # the seed itself is a root
        else:
            if v_res <= 2 * vw:
                raise DomainError(
                    "seed does not identify a branch: residual valuation %s "
                    "<= 2 * %s" % (v_res, vw))
            self.known = v_res - vw  # coefficients below this index are final
        # the lift must reproduce the full seed prefix, otherwise the seed is
        # not a prefix of the branch it selects
        self.lift_to(seed_prec)
        for i, c in enumerate(spec.seed_codes):
            if self.f.coeff(spec.seed_val + i) != c:
                raise DomainError(
                    "seed does not identify a branch: lifted root differs "
                    "from the seed at index %d" % (spec.seed_val + i))

    def lift_to(self, n):
        """Extend so coefficients at indices < n are final."""
        while self.known < n:
            self._step(n)

    def _step(self, goal):
        # always take the full quadratic step; clamping to the requested
        # coefficient would make the lift linear in the precision
        target = 2 * self.known - self.vw
        if target <= self.known:
            target = self.known + 1
        work_prec = target + self.vw  # residual precision needed
        rf = self.spec.R.eval_dense(self.f, self.spec.orientation)
        rf = rf.truncate(work_prec)
        if rf.is_zero_to_prec():
            self.known = target
            return
        rw = self.Rw.eval_dense(self.f, self.spec.orientation)
        rw = rw.truncate(work_prec)
        correction = rf * rw.inv()
        newf = self.f - correction
        newf = DenseLaurent.exact(self.ctx, newf.val,
                                  newf.truncate(target).codes)
        rf2 = self.spec.R.eval_dense(newf, self.spec.orientation)
        v_res = rf2.true_val()
        if v_res is None:
            self.f = newf
            self.known = math.inf
            return
        new_known = v_res - self.vw
        if new_known <= self.known:
            raise DomainError("Newton iteration stalled (residual %s)" % v_res)
        self.f = newf
        self.known = min(new_known, target)

    def coeff(self, n):
        if self.known is not math.inf:
            self.lift_to(n + 1)
        return self.f.coeff(n)


def hensel_root(spec, n_prec=None):
    """Stream of the unique root of R(z, w) = 0 matching the seed prefix.
    Coefficients are produced on demand by precision-doubling Newton steps;
    `n_prec` only pre-forces."""
    lifter = _NewtonLifter(spec)
    out = LaurentStream(spec.ctx, spec.orientation, spec.seed_val,
                        lifter.coeff)
    if n_prec is not None:
        out.prefix(n_prec)
    return out


# ---------------------------------------------------------------------------
# P-adic digit streams

class PiAdicStream:
    """Digit stream for the completion at an irreducible P: digits are
    polynomials of degree < deg P, the n-th weighting P^n."""

    __slots__ = ("P", "val", "_fn", "_digits")

    def __init__(self, P, val, fn):
        self.P = P
        self.val = val
        self._fn = fn
        self._digits = []

    @property
    def ctx(self):
        return self.P.ctx

    def digit(self, n):
        if n < self.val:
            return Poly.zero(self.P.ctx)
        while self.val + len(self._digits) <= n:
            d = self._fn(self.val + len(self._digits))
            if d.degree >= self.P.degree:
                raise DomainError("digit of degree >= deg P emitted")
            self._digits.append(d)
        return self._digits[n - self.val]

    def digits(self, count):
        return [self.digit(self.val + i) for i in range(count)]

    @staticmethod
    def from_ratfunc(x, P):
        """P-adic expansion of a rational function by exact remainder
        iteration."""
        from .algebra import val_p  # local import to avoid cycle noise

        ctx = P.ctx
        if x.is_zero():
            return PiAdicStream(P, 0, lambda n: Poly.zero(ctx))
        m = val_p(x, P)
        state = {"next": m, "r": x / RatFunc(P) ** m}

        def fn(n):
            assert n == state["next"]
            r = state["r"]
            d = _padic_reduce(r, P)
            state["r"] = (r - RatFunc(d)) / RatFunc(P)
            state["next"] = n + 1
            return d

        return PiAdicStream(P, m, fn)

    def __repr__(self):
        head = [d.to_string() for d in self._digits[:6]]
        return "PiAdicStream(P=%s, val=%d, digits=%s...)" % (
            self.P.to_string(), self.val, head)


def _padic_reduce(x, P):
    """Canonical residue (Poly of degree < deg P) of a rational x with
    v_P(x) >= 0."""
    num, den = x.num, x.den
    # strip any P factors from the denominator using num's (v_P(x) >= 0)
    while True:
        qd, rd = den.divmod(P)
        if not rd.is_zero():
            break
        qn, rn = num.divmod(P)
        if not rn.is_zero():
            raise DomainError("negative valuation at P: %s" % x)
        num, den = qn, qd
    dmod = den % P
    inv = _poly_inverse_mod(dmod, P)
    return (num % P) * inv % P


def _poly_inverse_mod(a, mod):
    """Inverse of a modulo mod (coprime) by extended Euclid."""
    ctx = a.ctx
    r0, r1 = mod, a % mod
    s0, s1 = Poly.zero(ctx), Poly.one(ctx)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise DomainError("value is not invertible modulo %s" % mod)
    inv_lead = ctx.inv(r0.coeff(0))
    return Poly(ctx, [ctx.mul(c, inv_lead) for c in s0.coeffs]) % mod


def padic_normalize(raw_digits, P, val=0):
    """Reduce raw polynomial digits to degree < deg P, carrying quotients to
    later positions; the represented value sum(digit_n P^n) is unchanged."""
    raw = list(raw_digits)
    state = {"carry": Poly.zero(P.ctx), "next": val}

    def fn(n):
        assert n == state["next"]
        idx = n - val
        cur = state["carry"]
        if idx < len(raw):
            cur = cur + raw[idx]
        carry, digit = cur.divmod(P)
        state["carry"] = carry
        state["next"] = n + 1
        return digit

    return PiAdicStream(P, val, fn)


# ---------------------------------------------------------------------------
# integer/fraction split in the descending model

def int_frac_split(x):
    """Split a descending-model value into ([x], {x}) with [x] a polynomial
    in z (indices <= 0) and {x} of strictly negative degree."""
    if not isinstance(x, LaurentStream):
        raise DomainError("int_frac_split expects a descending stream")
    if x.orientation != "desc":
        raise DomainError("int_frac_split needs the descending model")
    ctx = x.ctx
    coeffs = []
    if x.val <= 0:
        # index n <= 0 carries z^(-n)
        deg = -x.val
        coeffs = [0] * (deg + 1)
        for n in range(x.val, 1):
            coeffs[-n] = x.coeff(n)
    int_part = Poly(ctx, coeffs)
    frac_val = max(x.val, 1)
    frac = LaurentStream(ctx, "desc", frac_val, lambda n: x.coeff(n))
    return int_part, frac
