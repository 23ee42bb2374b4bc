"""Complete residue systems for the three concrete completions of F_q(z):
the z-adic model (F_q((z))), the P-adic model for irreducible P, and the
degree model (F_q((1/z))), plus the span/twist/shift transformations on
digit sets."""

import math

from .algebra import Poly, RatFunc, val_p, _poly_irreducible
from .errors import DomainError
from .streams import (
    LaurentStream,
    PiAdicStream,
    _padic_reduce,
    from_ratfunc_stream,
)


class BaseContext:
    """Completion model plus the expansion base pi.

    Fields: model in {'vz','vp','vdeg'}; pi (RatFunc or LaurentStream with
    v(pi) = e > 0; for 'vp' the base is the irreducible P itself); e = v(pi);
    f = residue degree (1 for vz/vdeg, deg P for vp); r = q^(e*f)."""

    def __init__(self, field, model, pi=None, P=None):
        self.field = field
        self.model = model
        self.P = None
        self.pi_stream = None
        if model == "vp":
            if P is None:
                raise DomainError("'vp' model needs the irreducible base P")
            if isinstance(P, RatFunc):
                P = P.as_poly()
            if not _poly_irreducible(P):
                raise DomainError("base %s is reducible" % P)
            self.P = P
            self.pi = RatFunc(P)
            self.e = 1
            self.f = int(P.degree)
        elif model in ("vz", "vdeg"):
            if pi is None:
                raise DomainError("model %r needs pi" % model)
            if isinstance(pi, Poly):
                pi = RatFunc(pi)
            self.pi = pi
            if isinstance(pi, LaurentStream):
                self.pi_stream = pi
                want = "asc" if model == "vz" else "desc"
                if pi.orientation != want:
                    raise DomainError("pi stream has the wrong orientation")
                e = pi.true_valuation()
            else:
                e = pi.val_z() if model == "vz" else pi.val_deg()
            if not isinstance(e, int) or e <= 0:
                raise DomainError("v(pi) = %s must be a positive integer" % e)
            self.e = e
            self.f = 1
        else:
            raise DomainError("unknown model %r" % model)
        self.r = field.q ** (self.e * self.f)

    # convenience constructors
    @staticmethod
    def vz(pi):
        field = pi.ctx if isinstance(pi, (Poly, RatFunc)) else pi.ctx
        return BaseContext(field, "vz", pi=pi)

    @staticmethod
    def vp(P):
        return BaseContext(P.ctx, "vp", P=P)

    @staticmethod
    def vdeg(pi):
        field = pi.ctx
        return BaseContext(field, "vdeg", pi=pi)

    @property
    def orientation(self):
        return "desc" if self.model == "vdeg" else "asc"

    def pi_is_rational(self):
        return isinstance(self.pi, RatFunc)

    def val(self, x):
        """Valuation of an exact (rational) element in this model."""
        if isinstance(x, Poly):
            x = RatFunc(x)
        if isinstance(x, RatFunc):
            if self.model == "vz":
                return x.val_z()
            if self.model == "vdeg":
                return x.val_deg()
            return val_p(x, self.P)
        raise DomainError("exact valuation needs a rational element")

    def reduce_key(self, x):
        """Hashable canonical form of x mod pi*A_v (a tuple of codes)."""
        if self.model == "vp":
            if isinstance(x, PiAdicStream):
                if x.P != self.P:
                    raise DomainError("stream over a different base")
                if x.val < 0:
                    raise DomainError("v(x) < 0")
                d = x.digit(0)
                return tuple(d.coeff(i) for i in range(int(self.P.degree)))
            if isinstance(x, Poly):
                x = RatFunc(x)
            if val_p(x, self.P) < 0:
                raise DomainError("v(x) < 0")
            d = _padic_reduce(x, self.P)
            return tuple(d.coeff(i) for i in range(int(self.P.degree)))
        # vz / vdeg: the class mod pi*A_v = M_v^e is the first e coefficients
        if isinstance(x, LaurentStream):
            if x.orientation != self.orientation:
                raise DomainError("stream from the wrong model")
            if x.val < 0:
                for n in range(x.val, 0):
                    if x.coeff(n):
                        raise DomainError("v(x) < 0")
            return tuple(x.coeff(j) for j in range(self.e))
        if isinstance(x, Poly):
            x = RatFunc(x)
        if self.val(x) < 0:
            raise DomainError("v(x) < 0")
        if x.is_zero():
            return (0,) * self.e
        stream = from_ratfunc_stream(x, self.orientation)
        return tuple(stream.coeff(j) for j in range(self.e))

    def lift_key(self, key):
        """Canonical element with the given reduction."""
        field = self.field
        if self.model == "vp":
            return Poly(field, list(key))
        if self.model == "vz":
            return Poly(field, list(key))
        # vdeg: sum key[i] z^-i = (sum key[i] z^(e-1-i)) / z^(e-1)
        e = self.e
        num = Poly(field, [key[e - 1 - j] for j in range(e)])
        return RatFunc(num, Poly.monomial(field, e - 1))

    def reduce_mod_pi(self, x):
        return self.lift_key(self.reduce_key(x))

    def __repr__(self):
        if self.model == "vp":
            return "BaseContext(vp, P=%s)" % self.P.to_string()
        pi = self.pi.to_string() if self.pi_is_rational() else "<stream>"
        return "BaseContext(%s, pi=%s, e=%d)" % (self.model, pi, self.e)


def reduce_mod_pi(x, ctx):
    """Canonical residue of x modulo pi*A_v (v(x) >= 0 required)."""
    return ctx.reduce_mod_pi(x)


def value_eq(a, b, ctx, depth=64):
    """Equality of digit-set members: exact for rational values, prefix
    comparison to `depth` coefficients when a lazy stream is involved."""
    ra = _as_exact(a)
    rb = _as_exact(b)
    if ra is not None and rb is not None:
        return ra == rb
    sa = _as_model_stream(a, ctx)
    sb = _as_model_stream(b, ctx)
    lo = min(sa.val, sb.val)
    for n in range(lo, lo + depth):
        if sa.coeff(n) != sb.coeff(n):
            return False
    return True


def _as_exact(x):
    if isinstance(x, Poly):
        return RatFunc(x)
    if isinstance(x, RatFunc):
        return x
    return None


def _as_model_stream(x, ctx):
    if isinstance(x, LaurentStream):
        return x
    if isinstance(x, Poly):
        x = RatFunc(x)
    return from_ratfunc_stream(x, ctx.orientation)


class ResidueSystem:
    """A complete set of representatives of A_v / pi*A_v together with the
    lookup structures used by digit extraction."""

    def __init__(self, ctx, reps, check=True):
        self.ctx = ctx
        self.reps = list(reps)
        self.keys = [ctx.reduce_key(r) for r in self.reps]
        self.digit_map = {}
        for i, k in enumerate(self.keys):
            if k in self.digit_map:
                if check:
                    raise DomainError("representatives %d and %d are "
                                      "congruent mod pi" % (self.digit_map[k], i))
            else:
                self.digit_map[k] = i
        if check and len(self.reps) != ctx.r:
            raise DomainError("|Gamma| = %d but A_v/pi A_v has %d classes"
                              % (len(self.reps), ctx.r))
        # optional provenance set by the constructors below
        self.span_gens = None
        self.span_base = None  # 'q' or 'p'
        self.twisted_from = None
        self.shifted_from = None

    def __len__(self):
        return len(self.reps)

    def index_of_key(self, key):
        try:
            return self.digit_map[key]
        except KeyError:
            raise DomainError("no representative for residue %s" % (key,))

    def rep_strings(self):
        out = []
        for r in self.reps:
            if isinstance(r, (Poly, RatFunc)):
                out.append(r.to_string())
            else:
                out.append(repr(r))
        return out

    def all_rational(self):
        return all(isinstance(r, (Poly, RatFunc)) for r in self.reps)

    def __repr__(self):
        return "ResidueSystem(%d reps, %r)" % (len(self.reps), self.ctx)


def check_complete(reps, ctx):
    """True iff the reps hit every class of A_v/pi*A_v exactly once."""
    seen = set()
    for r in reps:
        seen.add(ctx.reduce_key(r))
    return len(seen) == len(list(reps)) == ctx.r


def is_additively_closed(reps, ctx=None, depth=64):
    """Closure of the digit set under pairwise addition (equivalently, being
    an F_p-linear space).  Exact for rational members; stream members are
    compared to `depth` coefficients."""
    reps = list(reps)
    if not reps:
        return True
    if ctx is None:
        exact = [_as_exact(r) for r in reps]
        if any(e is None for e in exact):
            raise DomainError("stream members need an explicit context")
        for a in exact:
            for b in exact:
                if all(a + b != c for c in exact):
                    return False
        return True
    for a in reps:
        for b in reps:
            s = _value_add(a, b, ctx)
            if not any(value_eq(s, c, ctx, depth) for c in reps):
                return False
    return True


def _value_add(a, b, ctx):
    ea, eb = _as_exact(a), _as_exact(b)
    if ea is not None and eb is not None:
        return ea + eb
    return _as_model_stream(a, ctx) + _as_model_stream(b, ctx)


def _value_mul(a, b, ctx):
    ea, eb = _as_exact(a), _as_exact(b)
    if ea is not None and eb is not None:
        return ea * eb
    return _as_model_stream(a, ctx) * _as_model_stream(b, ctx)


def span_system(alphas, ctx, over="q"):
    """Residue system spanned linearly by the given generators (over F_q, or
    over the prime field with over='p').  The generators' reductions must be
    linearly independent and the span must be complete."""
    field = ctx.field
    base = field.q if over == "q" else field.p
    need = _span_size_exponent(ctx, over)
    if len(alphas) != need:
        raise DomainError("span needs %d independent generators, got %d"
                          % (need, len(alphas)))
    alphas = [RatFunc(a) if isinstance(a, Poly) else a for a in alphas]
    reps = []
    for counter in range(base ** len(alphas)):
        c = counter
        acc = None
        for a in alphas:
            coef = c % base
            c //= base
            term = _scalar_mul(a, coef, field, over)
            acc = term if acc is None else _value_add(acc, term, ctx)
        reps.append(acc)
    system = ResidueSystem(ctx, reps, check=False)
    if len(set(system.keys)) != ctx.r or len(reps) != ctx.r:
        raise DomainError("dependent generators: span covers %d of %d classes"
                          % (len(set(system.keys)), ctx.r))
    system = ResidueSystem(ctx, reps)
    system.span_gens = list(alphas)
    system.span_base = over
    return system


def _span_size_exponent(ctx, over):
    # |Gamma| = r = q^(ef); a span over F_q needs ef generators, over F_p
    # it needs log_p r = m*e*f
    ef = ctx.e * ctx.f
    if over == "q":
        return ef
    return ef * ctx.field.m


def _scalar_mul(a, coef, field, over):
    """coef in range(base) scales a: over='q' uses the code as a field
    element, over='p' uses the prime-subfield residue."""
    if over == "q":
        from .algebra import FieldElem

        scalar = FieldElem(field, coef)
    else:
        scalar = field.elem(coef)
    ea = _as_exact(a)
    if ea is not None:
        return ea * RatFunc.const(field, scalar)
    return a.scale(scalar)


def twist_system(system, L):
    """Gamma' = (1 - pi^L) * Gamma; complete because (1-pi^L)gamma is
    congruent to gamma mod pi*A_v."""
    ctx = system.ctx
    if ctx.pi_is_rational():
        factor = RatFunc.one(ctx.field) - ctx.pi ** L
    else:
        one = LaurentStream.from_codes(ctx.field, ctx.orientation, 0, [1])
        acc = ctx.pi
        for _ in range(L - 1):
            acc = acc * ctx.pi
        factor = one - acc
    reps = [_value_mul(factor, r, ctx) for r in system.reps]
    out = ResidueSystem(ctx, reps)
    out.twisted_from = (system, L)
    return out


def shift_system(system, xi):
    """Gamma + xi = {gamma + xi}; a bijection on residues, hence complete."""
    ctx = system.ctx
    if isinstance(xi, Poly):
        xi = RatFunc(xi)
    reps = [_value_add(r, xi, ctx) for r in system.reps]
    out = ResidueSystem(ctx, reps)
    out.shifted_from = (system, xi)
    return out
