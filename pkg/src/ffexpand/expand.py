"""Greedy digit extraction x = sum a_n pi^n over a residue system, exact and
bounded eventual-periodicity detection, the rationality criterion for a digit
system, and the constructive witness for systems that fail it.

Digit extraction runs in one of two engines.  If x, pi and every digit are
rational, the remainder after each digit is a rational function in canonical
form (the CarryState); state equality is then syntactic and drives the exact
period detector.  Otherwise remainders are lazy streams; each digit forces
only e coefficients of the current remainder, and the driver extends the
remainder chain iteratively so no deep recursion builds up.
"""

import math

from .algebra import GenPoly, Poly, RatFunc, rat_degree
from .errors import DomainError, StateCapError
from .residue import BaseContext, ResidueSystem, _as_exact
from .streams import (
    LaurentStream,
    PiAdicStream,
    _padic_reduce,
    from_ratfunc_stream,
    stream_inv,
)


class CarryState:
    """Exact remainder after n digits, canonical lowest-terms form."""

    __slots__ = ("remainder",)

    def __init__(self, remainder):
        self.remainder = remainder

    def key(self):
        return self.remainder.key()


class DigitExpansion:
    """Lazy digit stream a_m, a_{m+1}, ... with digits drawn from a residue
    system; digit(n) returns the representative, digit_index(n) its index."""

    def __init__(self, system, start, advance, value=None):
        self.system = system
        self.start = start
        self.value = value
        self._advance = advance  # () -> next digit index
        self._indices = []

    def _ensure(self, n):
        while self.start + len(self._indices) <= n:
            self._indices.append(self._advance())

    def digit_index(self, n):
        if n < self.start:
            # below the expansion start every digit is the zero value; only
            # systems that actually contain it can answer
            for i, rep in enumerate(self.system.reps):
                ex = _as_exact(rep)
                if ex is not None and ex.is_zero():
                    return i
            raise DomainError("no zero digit below the expansion start")
        self._ensure(n)
        return self._indices[n - self.start]

    def digit(self, n):
        return self.system.reps[self.digit_index(n)]

    def digits(self, count):
        return [self.digit(self.start + i) for i in range(count)]

    def index_prefix(self, count):
        self._ensure(self.start + count - 1)
        return list(self._indices[:count])

    def reconstruct(self, count):
        """Partial sum of the first `count` digits (rational systems)."""
        ctx = self.system.ctx
        if not ctx.pi_is_rational() or not self.system.all_rational():
            raise DomainError("reconstruction as a rational needs rational data")
        acc = RatFunc.zero(ctx.field)
        for i in range(count):
            n = self.start + i
            rep = _as_exact(self.digit(n))
            acc = acc + rep * ctx.pi ** n
        return acc


def _zero_digit_index(system):
    key = system.ctx.reduce_key(RatFunc.zero(system.ctx.field))
    return system.index_of_key(key)


# ---------------------------------------------------------------------------
# exact engine: remainders as raw num/den polynomial pairs; only exact
# divisions and z-power stripping, so no per-digit gcd cost

def _rat_head_key(ctx, num, den):
    """First e model coefficients of num/den (v >= 0 assumed)."""
    field = ctx.field
    e = ctx.e
    if num.is_zero():
        return (0,) * e
    if ctx.model == "vp":
        d = _padic_reduce(RatFunc(num, den, reduce=False), ctx.P)
        return tuple(d.coeff(i) for i in range(int(ctx.P.degree)))
    if ctx.model == "vz":
        a = num.val_at_zero()
        b = den.val_at_zero()
        ncodes = num.coeffs[a:]
        dcodes = den.coeffs[b:]
        v = a - b
    else:
        ncodes = num.coeffs[::-1]
        dcodes = den.coeffs[::-1]
        v = int(den.degree) - int(num.degree)
    if v < 0:
        raise DomainError("v(x) < 0")
    d0_inv = field.inv(dcodes[0])
    dtail = dcodes[1:]
    out = []
    series = []
    for k in range(e - v):
        uk = ncodes[k] if k < len(ncodes) else 0
        acc = 0
        for j in range(1, min(k, len(dtail)) + 1):
            acc = field.add(acc, field.mul(dtail[j - 1], series[k - j]))
        ck = field.mul(d0_inv, field.sub(uk, acc))
        series.append(ck)
    out = [0] * min(v, e) + series
    return tuple(out[:e])


def _expand_exact(x, system, start):
    ctx = system.ctx
    field = ctx.field
    if isinstance(x, Poly):
        x = RatFunc(x)
    if start is None:
        if x.is_zero():
            start = 0
        else:
            start = math.floor(ctx.val(x) / ctx.e)
    pin, pid = ctx.pi.num, ctx.pi.den
    num, den = x.num, x.den
    if start > 0:
        num = num * pid ** start
        den = den * pin ** start
    elif start < 0:
        num = num * pin ** (-start)
        den = den * pid ** (-start)
    state = {"num": num, "den": den}

    def strip(num, den):
        if num.is_zero():
            return num, Poly.one(field)
        a = num.val_at_zero()
        b = den.val_at_zero()
        k = min(a, b)
        if k:
            num = Poly._raw(field, num.coeffs[k:])
            den = Poly._raw(field, den.coeffs[k:])
        return num, den

    def advance():
        num, den = state["num"], state["den"]
        key = _rat_head_key(ctx, num, den)
        idx = system.index_of_key(key)
        rep = _as_exact(system.reps[idx])
        gn, gd = rep.num, rep.den
        if gd.degree == 0:
            num = num - gn * den
        else:
            num = num * gd - gn * den
            den = den * gd
        # divide by pi = pin/pid
        num = num * pid
        quo, rem = num.divmod(pin)
        if rem.is_zero():
            num = quo
        else:
            den = den * pin
        num, den = strip(num, den)
        state["num"], state["den"] = num, den
        return idx

    out = DigitExpansion(system, start, advance, value=x)
    out.carry_state = lambda: CarryState(RatFunc(state["num"], state["den"]))
    return out


# ---------------------------------------------------------------------------
# stream engine

def _rep_block_degree_ok(system):
    """True when every representative lives on indices < e in the model, so
    digits never bleed across pi-blocks."""
    ctx = system.ctx
    e = ctx.e
    for rep in system.reps:
        ex = _as_exact(rep)
        if ex is None:
            return False
        if ex.is_zero():
            continue
        if ctx.model == "vz":
            if not ex.is_poly() or ex.as_poly().degree >= e:
                return False
        else:  # vdeg
            shifted = ex * RatFunc(Poly.monomial(ctx.field, e - 1))
            if not shifted.is_poly() or shifted.as_poly().degree > e - 1:
                return False
    return True


def _pi_is_uniformizer_power(ctx):
    """pi == z^e (vz) or 1/z^e (vdeg) exactly."""
    if not ctx.pi_is_rational():
        return False
    pi = ctx.pi
    if ctx.model == "vz":
        return pi.den.degree == 0 and pi.num == Poly.monomial(ctx.field, ctx.e)
    if ctx.model == "vdeg":
        return pi.num.degree == 0 and pi.num.coeff(0) == 1 and \
            pi.den == Poly.monomial(ctx.field, ctx.e)
    return False


def _expand_stream(x, system, start, pi_inv=None, scan_depth=None):
    ctx = system.ctx
    if ctx.model == "vp":
        raise DomainError("stream expansion over the P-adic model is only "
                          "supported through PiAdicStream digits")
    orientation = ctx.orientation
    if isinstance(x, (Poly, RatFunc)):
        x = from_ratfunc_stream(RatFunc(x) if isinstance(x, Poly) else x,
                                orientation)
    if x.orientation != orientation:
        raise DomainError("value stream has the wrong orientation")
    e = ctx.e
    if start is None:
        v = x.true_valuation() if scan_depth is None else \
            x.true_valuation(scan_depth)
        start = math.floor(v / e)

    if _pi_is_uniformizer_power(ctx) and _rep_block_degree_ok(system):
        # digits are independent e-blocks of coefficients
        def advance_blocks(state={"n": 0}):
            n = state["n"]
            state["n"] = n + 1
            base = (start + n) * e
            key = tuple(x.coeff(base + j) for j in range(e))
            return system.index_of_key(key)

        return DigitExpansion(system, start, advance_blocks, value=x)

    # generic chain of remainder streams
    if pi_inv is None:
        if ctx.pi_is_rational():
            inv = RatFunc.one(ctx.field) / ctx.pi
            pi_inv = from_ratfunc_stream(inv, orientation)
        else:
            pi_inv = stream_inv(ctx.pi)
    rep_streams = {}

    state = {"r": x.shift(0) if start == 0 else _stream_shift_scaled(x, ctx, -start),
             "n": 0, "chain": []}
    state["chain"].append(state["r"])

    def rep_stream(idx):
        if idx not in rep_streams:
            rep = system.reps[idx]
            if isinstance(rep, LaurentStream):
                rep_streams[idx] = rep
            else:
                rep_streams[idx] = from_ratfunc_stream(_as_exact(rep),
                                                       orientation)
        return rep_streams[idx]

    def advance():
        n = state["n"]
        # extend every retained remainder so the newest only reaches one
        # level down (keeps Python recursion flat)
        chain = state["chain"]
        for depth, layer in enumerate(chain):
            layer.prefix(e * (n - depth + 1) + e)
        cur = state["r"]
        key = tuple(cur.coeff(j) for j in range(e))
        idx = system.index_of_key(key)
        nxt = (cur - rep_stream(idx)) * pi_inv
        state["r"] = nxt
        state["n"] = n + 1
        chain.append(nxt)
        return idx

    return DigitExpansion(system, start, advance, value=x)


def _stream_shift_scaled(x, ctx, power):
    """x * pi^power for stream x (power may be negative)."""
    if _pi_is_uniformizer_power(ctx):
        return x.shift(power * ctx.e)
    if ctx.pi_is_rational():
        factor = from_ratfunc_stream(ctx.pi ** power, ctx.orientation)
        return x * factor
    if power >= 0:
        acc = x
        for _ in range(power):
            acc = acc * ctx.pi
        return acc
    inv = stream_inv(ctx.pi)
    acc = x
    for _ in range(-power):
        acc = acc * inv
    return acc


def expand(x, system, n_digits=None, start=None, pi_inv=None):
    """Greedy (Gamma, pi)-expansion of x.  The start index defaults to
    floor(v(x)/e); pass `start` to align expansions across systems.  For a
    stream pi, `pi_inv` may supply a known inverse (e.g. beta for pi=1/beta).
    """
    ctx = system.ctx
    if isinstance(x, PiAdicStream):
        return _expand_padic_stream(x, system, n_digits)
    exact = _as_exact(x)
    if exact is not None and ctx.pi_is_rational() and system.all_rational():
        out = _expand_exact(exact, system, start)
    else:
        out = _expand_stream(x, system, start, pi_inv=pi_inv)
    if n_digits:
        out.index_prefix(n_digits)
    return out


def _expand_padic_stream(x, system, n_digits):
    ctx = system.ctx
    if ctx.model != "vp" or x.P != ctx.P:
        raise DomainError("PiAdicStream does not match the context base")
    std = all(
        isinstance(r, (Poly, RatFunc)) and _as_exact(r).is_poly()
        and _as_exact(r).as_poly().degree < ctx.P.degree
        for r in system.reps)
    if not std:
        raise DomainError("P-adic stream expansion needs the standard "
                          "degree-bounded digit set")
    state = {"n": x.val}

    def advance():
        n = state["n"]
        state["n"] = n + 1
        d = x.digit(n)
        return system.index_of_key(
            tuple(d.coeff(i) for i in range(int(ctx.P.degree))))

    out = DigitExpansion(system, x.val, advance, value=x)
    if n_digits:
        out.index_prefix(n_digits)
    return out


# ---------------------------------------------------------------------------
# periodicity

class PeriodCertificate:
    """status 'exact': digits repeat with period L from absolute index N on,
    verified structurally from a repeated remainder state.  status
    'candidate': the inspected prefix is consistent with (N, L); never
    upgraded to exact.  status 'none-within-bounds': no such (N, L)."""

    def __init__(self, status, start=0, preperiod=None, period=None,
                 prefix_indices=None, system=None, bounds=None):
        self.status = status
        self.start = start
        self.preperiod = preperiod  # absolute index N
        self.period = period  # L
        self.prefix_indices = prefix_indices or []
        self.system = system
        self.bounds = bounds

    def digit_index(self, n):
        if self.status != "exact":
            raise DomainError("only exact certificates regenerate digits")
        rel = n - self.start
        if rel < 0:
            raise DomainError("index below the expansion start")
        pre = self.preperiod - self.start
        if rel < pre:
            return self.prefix_indices[rel]
        return self.prefix_indices[pre + (rel - pre) % self.period]

    def digit(self, n):
        return self.system.reps[self.digit_index(n)]

    def digits(self, count):
        return [self.digit(self.start + i) for i in range(count)]

    def resum(self):
        """Exact rational value of the certified digit stream (geometric
        closed form for the periodic tail)."""
        if self.status != "exact":
            raise DomainError("resummation needs an exact certificate")
        ctx = self.system.ctx
        field = ctx.field
        pi = ctx.pi
        acc = RatFunc.zero(field)
        pre = self.preperiod - self.start
        for i in range(pre):
            rep = _as_exact(self.system.reps[self.prefix_indices[i]])
            acc = acc + rep * pi ** (self.start + i)
        block = RatFunc.zero(field)
        for j in range(self.period):
            rep = _as_exact(self.system.reps[self.prefix_indices[pre + j]])
            block = block + rep * pi ** (self.preperiod + j)
        one = RatFunc.one(field)
        return acc + block / (one - pi ** self.period)

    def __repr__(self):
        if self.status == "exact":
            return "PeriodCertificate(exact, N=%d, L=%d)" % (self.preperiod,
                                                             self.period)
        if self.status == "candidate":
            return "PeriodCertificate(candidate, N=%d, L=%d, bounds=%s)" % (
                self.preperiod, self.period, self.bounds)
        return "PeriodCertificate(none-within-bounds, bounds=%s)" % (
            self.bounds,)


def detect_period_exact(x, system, state_cap=10 ** 6):
    """Exact certificate for a rational x over a rational digit system: the
    remainder sequence must revisit a canonical state, and equal states emit
    identical digit tails forever."""
    ctx = system.ctx
    exact = _as_exact(x)
    if exact is None or not ctx.pi_is_rational() or not system.all_rational():
        raise DomainError("exact detection needs rational x, pi and digits")
    x = exact
    if x.is_zero():
        start = 0
    else:
        start = math.floor(ctx.val(x) / ctx.e)
    r = x * ctx.pi ** (-start) if start else x
    seen = {}
    digits = []
    step = 0
    while True:
        key = r.key()
        if key in seen:
            first = seen[key]
            return PeriodCertificate(
                "exact", start=start, preperiod=start + first,
                period=step - first, prefix_indices=digits, system=system)
        seen[key] = step
        if step >= state_cap:
            raise StateCapError(state_cap, "remainder states")
        idx = system.index_of_key(ctx.reduce_key(r))
        digits.append(idx)
        rep = _as_exact(system.reps[idx])
        r = (r - rep) / ctx.pi
        step += 1


def detect_period_bounded(expansion, n_max, l_max):
    """Candidate (N, L) consistent with the inspected digits: agreement
    d[n] = d[n+L] is required for every n in [N, n_max), so digits up to
    index n_max + L - 1 are read, and the preperiod must stay at most
    n_max - 2*l_max.  Never claims exactness."""
    if isinstance(expansion, DigitExpansion):
        prefix = expansion.index_prefix(n_max + l_max)
        start = expansion.start
    else:
        prefix = list(expansion)
        start = 0
    bounds = (n_max, l_max)
    limit = n_max - 2 * l_max
    best = None
    for L in range(1, l_max + 1):
        n = min(n_max, len(prefix) - L) - 1
        while n >= 0 and prefix[n] == prefix[n + L]:
            n -= 1
        first_ok = n + 1
        if first_ok <= limit:
            best = (first_ok, L)
            break
    if best is None:
        return PeriodCertificate("none-within-bounds", start=start,
                                 bounds=bounds)
    return PeriodCertificate("candidate", start=start,
                             preperiod=start + best[0], period=best[1],
                             bounds=bounds)


# ---------------------------------------------------------------------------
# the rationality criterion and its failure witness

class PropertyAResult:
    def __init__(self, holds, reason=None, h=None, ef=None):
        self.holds = holds
        self.reason = reason
        self.h = h
        self.ef = ef

    def __bool__(self):
        return self.holds

    def describe(self):
        if self.holds:
            return "holds: [K:F_q(pi)]=%d = e*f=%d" % (self.h, self.ef)
        return "fails %s" % self.reason

    def __repr__(self):
        return "PropertyAResult(%s)" % self.describe()


def property_a_check(pi, system_or_reps, ctx):
    """Criterion for 'rational <=> eventually periodic digits': (i) pi and
    all digits rational, (ii) the map degree of pi equals e*f."""
    reps = system_or_reps.reps if isinstance(system_or_reps, ResidueSystem) \
        else list(system_or_reps)
    if isinstance(pi, Poly):
        pi = RatFunc(pi)
    if not isinstance(pi, RatFunc):
        return PropertyAResult(False, "(i): pi is not rational")
    for r in reps:
        if _as_exact(r) is None:
            return PropertyAResult(False, "(i): a digit is not rational")
    ef = ctx.e * ctx.f
    h = rat_degree(pi)
    if h != ef:
        return PropertyAResult(
            False, "(ii): [K:F_q(pi)]=%d > e*f=%d" % (h, ef), h=h, ef=ef)
    return PropertyAResult(True, h=h, ef=ef)


def _component_field_tools(field):
    zero = RatFunc.zero(field)
    one = RatFunc.one(field)
    return zero, one


def _minpoly_of_z(ctx):
    """M(T) = num_pi(T) - pihat * den_pi(T), monic over F_q(pihat): the
    minimal polynomial of z over the subfield generated by pi.  Coefficients
    are rational functions in the abstract symbol pihat."""
    field = ctx.field
    zero, one = _component_field_tools(field)
    pi = ctx.pi
    h = rat_degree(pi)
    pihat = RatFunc.x(field)  # the abstract symbol
    coeffs = [zero] * (h + 1)
    for j, c in enumerate(pi.num.coeffs):
        coeffs[j] = coeffs[j] + RatFunc.const(field, c)
    for j, c in enumerate(pi.den.coeffs):
        coeffs[j] = coeffs[j] - pihat * RatFunc.const(field, c)
    M = GenPoly(coeffs, zero, one)
    if M.degree != h:
        raise DomainError("degenerate minimal polynomial for z over F_q(pi)")
    return M.monic()


def _genpoly_invmod(a, M, zero, one):
    r0, r1 = M, a % M
    s0, s1 = GenPoly([zero], zero, one), GenPoly([one], zero, one)
    if r1.is_zero():
        raise DomainError("not invertible modulo the minimal polynomial")
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise DomainError("not invertible modulo the minimal polynomial")
    return s0.scale(one / r0.coeffs[0]) % M


def decompose_over_pi_basis(value, ctx, h=None):
    """Components of a rational value along the power basis 1, z, ...,
    z^(h-1) of K over F_q(pi); each component is a rational function in the
    abstract symbol pihat."""
    field = ctx.field
    zero, one = _component_field_tools(field)
    M = _minpoly_of_z(ctx)
    if h is None:
        h = M.degree
    value = _as_exact(value)
    numT = GenPoly([RatFunc.const(field, c) for c in value.num.coeffs],
                   zero, one)
    denT = GenPoly([RatFunc.const(field, c) for c in value.den.coeffs],
                   zero, one)
    gp = (numT * _genpoly_invmod(denT, M, zero, one)) % M
    return [gp.coeff(i) for i in range(h)]


def aperiodicity_witness(system, basis=None):
    """A rational x whose digit expansion is provably not eventually
    periodic, built constructively when the rationality criterion fails with
    reason (ii).  The default basis 1, z covers map degree 2; larger degrees
    need an explicit basis of K over F_q(pi)."""
    ctx = system.ctx
    field = ctx.field
    res = property_a_check(ctx.pi, system, ctx)
    if res.holds or (res.reason or "").startswith("(i)"):
        raise DomainError("witness construction needs a system failing the "
                          "degree condition (ii)")
    h, ef = res.h, res.ef
    if basis is None:
        if h != 2 or ef != 1:
            raise DomainError("only the degree-2 basis {1, z} is built in; "
                              "supply a basis of K over F_q(pi)")
        basis = [RatFunc.one(field), RatFunc.x(field)]
    if len(basis) != h:
        raise DomainError("basis must have %d elements" % h)
    basis = [_as_exact(b) for b in basis]

    # components of each digit along the basis, as series in pihat
    comps = {}
    for i, rep in enumerate(system.reps):
        rep_ex = _as_exact(rep)
        if rep_ex.is_zero():
            comps[i] = None  # m(0) = +inf
            continue
        c = decompose_over_pi_basis(rep_ex, ctx, h)
        comps[i] = c
    m_best = math.inf
    chosen = None
    for i, c in comps.items():
        if c is None:
            continue
        vals = [comp.val_z() for comp in c]
        m_gamma = min(vals)
        if m_gamma < m_best:
            m_best = m_gamma
            chosen = i
    if chosen is None or m_best > 0:
        raise DomainError("no digit with nonpositive component valuation; "
                          "basis does not expose the obstruction")
    m = m_best
    gamma_key = system.keys[chosen]

    # coefficient of pihat^m in each component of the chosen digit
    b_vec = []
    for comp in comps[chosen]:
        if comp.is_zero():
            b_vec.append(0)
        else:
            b_vec.append(from_ratfunc_stream(comp, "asc").coeff(m))
    b_vec = tuple(b_vec)

    # lambda tuples with sum lambda_i alpha_i congruent to the chosen digit
    q = field.q
    if q ** h > 65536:
        raise DomainError("witness search space too large")
    from .algebra import FieldElem

    candidates = []
    for counter in range(q ** h):
        cc = counter
        lam = []
        acc = RatFunc.zero(field)
        for i in range(h):
            code = cc % q
            cc //= q
            lam.append(code)
            acc = acc + basis[i] * RatFunc.const(field, FieldElem(field, code))
        if ctx.val(acc) >= 0 and ctx.reduce_key(acc) == gamma_key:
            candidates.append((tuple(lam), acc))
    if not candidates:
        raise DomainError("no basis combination hits the chosen residue "
                          "class; basis construction failed")
    for lam, value in candidates:
        if lam != b_vec:
            return value
    raise DomainError("every candidate matches the leading coefficient "
                      "vector; basis construction failed")


# ---------------------------------------------------------------------------
# conversion between digit systems

def convert_expansion(d, new_system, n_digits):
    """Expansion of the same value with respect to a different complete
    system.  When both systems are spans with polynomial components over the
    same generators, the closed-form digit recombination is used and
    cross-checked against the naive re-expansion."""
    if d.system.ctx is not new_system.ctx:
        same = (d.system.ctx.model == new_system.ctx.model
                and d.system.ctx.pi_is_rational()
                and new_system.ctx.pi_is_rational()
                and d.system.ctx.pi == new_system.ctx.pi)
        if not same:
            raise DomainError("conversion requires the same base context")
    if d.value is None:
        raise DomainError("the expansion does not retain its value")
    naive = expand(d.value, new_system, n_digits, start=None)
    recmb = _recombine_digits(d, new_system, n_digits)
    if recmb is not None:
        got = [recmb.digit_index(recmb.start + i) for i in range(n_digits)]
        want = [naive.digit_index(naive.start + i) for i in range(n_digits)]
        if recmb.start != naive.start or got != want:
            raise DomainError("recombination disagrees with re-expansion")
    return naive


def _recombine_digits(d, new_system, n_digits):
    """Closed-form digit map when the old digits have polynomial components
    over the new span's generators (components in F_q[pihat])."""
    ctx = new_system.ctx
    if new_system.span_gens is None or new_system.span_base != "q":
        return None
    if not ctx.pi_is_rational() or not d.system.all_rational():
        return None
    gens = new_system.span_gens
    ef = ctx.e * ctx.f
    if len(gens) != ef:
        return None
    try:
        lincomb = _solve_components_over_gens(d.system, gens, ctx)
    except DomainError:
        return None
    if lincomb is None:
        return None
    # lincomb[i] = list of ef polynomial components (coeff lists in pihat)
    dmax = 0
    for comps in lincomb:
        for c in comps:
            dmax = max(dmax, len(c) - 1)
    start = d.start
    field = ctx.field
    q = field.q

    def a_coeff(n, k, i):
        if n < start:
            return 0
        comps = lincomb[d.digit_index(n)]
        c = comps[i]
        return c[k] if k < len(c) else 0

    def digit_at(n):
        codes = []
        for i in range(ef):
            acc = 0
            for k in range(dmax + 1):
                acc = field.add(acc, a_coeff(n - k, k, i))
            codes.append(acc)
        # span index in generator counting order
        idx = 0
        for i in range(ef - 1, -1, -1):
            idx = idx * q + codes[i]
        return idx

    state = {"n": start}

    def advance():
        n = state["n"]
        state["n"] = n + 1
        return digit_at(n)

    return DigitExpansion(new_system, start, advance, value=d.value)


def _solve_components_over_gens(system, gens, ctx):
    """Components of each digit of `system` over the generator basis, kept
    only if every component is a polynomial in pihat."""
    field = ctx.field
    zero, one = _component_field_tools(field)
    h = ctx.e * ctx.f
    if rat_degree(ctx.pi) != h:
        return None
    # basis change: express gens and digits over the power basis of z, then
    # solve gens * X = digit componentwise over F_q(pihat)
    gen_cols = [decompose_over_pi_basis(g, ctx, h) for g in gens]
    out = []
    for rep in system.reps:
        rep_ex = _as_exact(rep)
        target = decompose_over_pi_basis(rep_ex, ctx, h) if not rep_ex.is_zero() \
            else [zero] * h
        sol = _solve_linear_ratfunc(gen_cols, target, zero, one)
        if sol is None:
            raise DomainError("generators do not span the digit")
        comps = []
        for s in sol:
            if not s.is_poly():
                return None
            comps.append(list(s.num.coeffs))
        out.append(comps)
    return out


def _solve_linear_ratfunc(cols, target, zero, one):
    """Solve sum_j x_j cols[j] = target over the rational-function field by
    Gaussian elimination; returns None if singular."""
    n = len(cols)
    h = len(target)
    mat = [[cols[j][i] for j in range(n)] + [target[i]] for i in range(h)]
    row = 0
    piv_cols = []
    for col in range(n):
        piv = None
        for rr in range(row, h):
            if mat[rr][col]:
                piv = rr
                break
        if piv is None:
            return None
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = one / mat[row][col]
        mat[row] = [c * inv for c in mat[row]]
        for rr in range(h):
            if rr != row and mat[rr][col]:
                factor = mat[rr][col]
                mat[rr] = [a - factor * b for a, b in zip(mat[rr], mat[row])]
        piv_cols.append(col)
        row += 1
        if row == h:
            break
    if row < n:
        return None
    for rr in range(row, h):
        if mat[rr][n]:
            return None
    return [mat[i][n] for i in range(n)]


def twist_digits(d, L, n_digits):
    """Digits of (1 - pi^L) * x with respect to (1 - pi^L) * Gamma: the digit
    at each level is (1 - pi^L) times the original digit."""
    from .residue import twist_system

    ctx = d.system.ctx
    new_system = twist_system(d.system, L)
    factor = RatFunc.one(ctx.field) - ctx.pi ** L
    value = None
    if d.value is not None and _as_exact(d.value) is not None:
        value = factor * _as_exact(d.value)

    def advance(state={"n": d.start}):
        n = state["n"]
        state["n"] = n + 1
        return d.digit_index(n)

    out = DigitExpansion(new_system, d.start, advance, value=value)
    out.index_prefix(n_digits)
    return new_system, out
