"""Effective two-way correspondence between algebraic series over F_q and
finite automata, plus its digit-system generalizations: expansions over
additively closed span systems, shifted systems, and the q = 2 case with
power-series digits.

The encoder works from an Ore form sum_i c_i f^(q^i) = 0 with c_0 != 0.
States of the output automaton are (h+1)-tuples (b_0..b_h) of polynomials of
degree <= B representing the series g = (1/c_0) * sum_i b_i f^(q^i); reading
digit r applies the coefficient-extraction operator for residue r, which maps
the tuple to

    b'_j = Lambda_r(c_0^(q-2) * (c_0*b_{j+1} - b_0*c_{j+1})),   b'_h = 0,

where Lambda_r on a polynomial keeps the coefficients at exponents congruent
to r mod q.  With B = max_i deg c_i the update provably stays inside the
degree bound, so the state space is finite and the breadth-first closure
terminates.  The output of a state is the z^0 coefficient of its series."""

import math

from .algebra import GenPoly, Poly, RatFunc
from .automata import DFAO, dfao_minimize, dfao_product
from .errors import DomainError, NoRelationError, StateCapError
from .residue import _as_exact
from .streams import (
    AlgebraicSpec,
    BivarPoly,
    LaurentStream,
    from_ratfunc_stream,
    hensel_root,
    stream_inv,
)


# ---------------------------------------------------------------------------
# Ore form

class OreForm:
    """Relation sum_{i=0}^{h} c_i f^(q^i) = 0 with polynomial c_i, c_0 != 0,
    verified against the series to the stated precision."""

    def __init__(self, coeffs, source, verified_to):
        self.c = list(coeffs)
        self.h = len(self.c) - 1
        self.source = source
        self.verified_to = verified_to
        if self.c[0].is_zero():
            raise DomainError("Ore form needs c_0 != 0")

    def degree_bound(self):
        return max(int(ci.degree) for ci in self.c if not ci.is_zero())

    def relation_stream(self, f):
        acc = LaurentStream.zero(f.ctx, "asc")
        for i, ci in enumerate(self.c):
            if ci.is_zero():
                continue
            term = f.pow_q(i) * LaurentStream.from_poly(ci, "asc")
            acc = acc + term
        return acc

    def __repr__(self):
        return "OreForm(h=%d, c=%s)" % (
            self.h, [ci.to_string() for ci in self.c])


def series_of(source, orientation="asc"):
    """Ascending coefficient stream of an algebraic or rational source."""
    if isinstance(source, LaurentStream):
        return source
    if isinstance(source, AlgebraicSpec):
        return hensel_root(source)
    ex = _as_exact(source)
    if ex is not None:
        return from_ratfunc_stream(ex, orientation)
    raise DomainError("cannot take a series of %r" % (source,))


def _spec_of(source, orientation="asc"):
    if isinstance(source, AlgebraicSpec):
        return source
    ex = _as_exact(source)
    if ex is not None:
        return AlgebraicSpec.from_ratfunc(ex, orientation)
    raise DomainError("an AlgebraicSpec or rational value is required")


def _separable_part(R, field):
    """Squarefree separable factor of R still vanishing at any simple root:
    repeatedly strip gcd(H, dH/dw).  Works over K = F_q(z) without any
    factorization."""
    zero = RatFunc.zero(field)
    one = RatFunc.one(field)
    H = GenPoly([RatFunc(c) for c in R.wcoeffs], zero, one)
    if H.degree < 1:
        raise DomainError("relation must involve w")
    while True:
        Hw = H.derivative(field.p)
        if Hw.is_zero():
            raise DomainError("relation is inseparable in w (no simple root)")
        G = H.gcd(Hw)
        if G.degree == 0:
            return H.monic()
        quo, rem = H.divmod(G)
        if not rem.is_zero():
            raise DomainError("separable reduction failed")
        H = quo


def ore_form(source, verify_to=64):
    """Ore form of an algebraic series, built symbolically: reduce the
    defining relation to its squarefree separable part H, then find the
    minimal linear dependence of the Frobenius powers of w in K[w]/(H) by
    Gaussian elimination over K.  Minimality makes the leading coefficient
    c_0 nonzero; the relation is re-verified against the series."""
    if isinstance(source, OreForm):
        return source
    ex = _as_exact(source)
    if ex is not None and ex.is_zero():
        raise DomainError("zero series has only the trivial relation")
    spec = _spec_of(source)
    field = spec.ctx
    if spec.orientation != "asc":
        raise DomainError("Ore forms are built in the ascending model")
    H = _separable_part(spec.R, field)
    zero = RatFunc.zero(field)
    one = RatFunc.one(field)
    q = field.q

    w = GenPoly([zero, one], zero, one) % H
    dim = int(H.degree)

    # incremental dependence search among v_i = w^(q^i) mod H
    basis = []  # rows: (vector, combo) with a normalized pivot
    combos = []
    vecs = []
    v = w
    t = 0
    dependence = None
    while t <= dim:
        vec = [v.coeff(i) for i in range(dim)]
        combo = [one if j == t else zero for j in range(t + 1)]
        for pivot, (bvec, bcombo) in basis:
            factor = vec[pivot]
            if factor:
                vec = [a - factor * b for a, b in zip(vec, bvec)]
                combo = [a - factor * b for a, b in
                         zip(combo + [zero] * (len(bcombo) - len(combo)),
                             bcombo + [zero] * (len(combo) - len(bcombo)))]
        if all(not c for c in vec):
            dependence = combo
            break
        pivot = next(i for i, c in enumerate(vec) if c)
        inv = one / vec[pivot]
        vec = [c * inv for c in vec]
        combo = [c * inv for c in combo]
        basis.append((pivot, (vec, combo)))
        v = v.powmod(q, H)
        t += 1
    if dependence is None:
        raise NoRelationError("no Frobenius dependence within degree %d" % dim)

    # clear denominators (lcm) and content
    den = Poly.one(field)
    for lam in dependence:
        if lam:
            g = den.gcd(lam.den)
            den = den * lam.den.exact_div(g)
    coeffs = []
    for lam in dependence:
        if lam:
            coeffs.append(lam.num * den.exact_div(lam.den))
        else:
            coeffs.append(Poly.zero(field))
    content = Poly.zero(field)
    for c in coeffs:
        content = content.gcd(c) if not content.is_zero() else c
    if content.degree > 0:
        coeffs = [c.exact_div(content) for c in coeffs]
    if coeffs[0].is_zero():
        raise DomainError("minimal Frobenius dependence has c_0 = 0; the "
                          "branch is inseparable")
    lead_inv = field.inv(coeffs[0].lead())
    coeffs = [Poly._raw(field, [field.mul(cc, lead_inv) for cc in c.coeffs])
              for c in coeffs]

    form = OreForm(coeffs, spec, verify_to)
    f = series_of(spec)
    res = form.relation_stream(f)
    for n in range(res.val, verify_to):
        if res.coeff(n):
            raise DomainError("Ore relation failed verification at z^%d" % n)
    return form


def _poly_cartier(poly, r, q):
    """Keep coefficients at exponents congruent to r mod q, re-indexed."""
    ctx = poly.ctx
    out = []
    j = r
    while j < len(poly.coeffs):
        out.append(poly.coeffs[j])
        j += q
    return Poly._raw(ctx, out)


def encode(source, state_cap=100000, validate=0, verify_to=64):
    """Base-q automaton computing the coefficient sequence of an algebraic
    series with nonnegative valuation.  With validate=n the outputs are
    checked against the series for all indices < n."""
    form = ore_form(source, verify_to)
    spec = form.source
    field = spec.ctx
    q = field.q
    if spec.seed_val < 0:
        raise DomainError("encode needs v(f) >= 0; rescale the series first")
    f = series_of(spec)

    c = form.c
    h = form.h
    B = form.degree_bound()
    c0 = c[0]
    A = c0 ** (q - 1)
    Bc = [c0 ** (q - 2) * ci for ci in c]

    # output functional: z^0 coefficient of (1/c0) sum b_i f^(q^i)
    w0 = c0.val_at_zero()
    u_codes = c0.coeffs[w0:]
    uinv = _series_inv_codes(field, u_codes, w0 + 1)
    fq_prefix = []
    fpref = f.prefix(w0 + 1)
    fval = f.val
    for i in range(h + 1):
        step = q ** i
        row = [0] * (w0 + 1)
        for n in range(w0 + 1):
            rel = n - fval * step
            if rel >= 0 and rel % step == 0:
                row[n] = f.coeff(fval + rel // step)
        fq_prefix.append(row)

    def tau(bs):
        Hc = [0] * (w0 + 1)
        for i, b in enumerate(bs):
            if b.is_zero():
                continue
            row = fq_prefix[i]
            for j, bj in enumerate(b.coeffs):
                if bj:
                    for n in range(j, w0 + 1):
                        Hc[n] = field.add(Hc[n],
                                          field.mul(bj, row[n - j]))
        acc = 0
        for kk in range(w0 + 1):
            acc = field.add(acc, field.mul(Hc[kk], uinv[w0 - kk]))
        return acc

    def key_of(bs):
        return tuple(tuple(b.coeffs) for b in bs)

    zero_poly = Poly.zero(field)
    init = [c0] + [zero_poly] * h
    states = {key_of(init): 0}
    order = [init]
    trans = []
    i = 0
    while i < len(order):
        bs = order[i]
        b0 = bs[0]
        row = []
        for r in range(q):
            nxt = []
            for j in range(h):
                work = A * bs[j + 1] - Bc[j + 1] * b0
                img = _poly_cartier(work, r, q)
                if img.degree > B:
                    raise DomainError("Cartier image exceeded the degree "
                                      "bound %d" % B)
                nxt.append(img)
            nxt.append(zero_poly)
            kk = key_of(nxt)
            if kk not in states:
                if len(order) >= state_cap:
                    raise StateCapError(
                        state_cap, "Cartier closure at degree bound %d" % B)
                states[kk] = len(order)
                order.append(nxt)
            row.append(states[kk])
        trans.append(row)
        i += 1
    outs = [tau(bs) for bs in order]
    machine = dfao_minimize(DFAO(q, trans, outs, 0))
    if validate:
        for n in range(validate):
            if machine.eval(n) != f.coeff(n):
                raise DomainError("encoder output disagrees with the series "
                                  "at index %d" % n)
    return machine


def _series_inv_codes(field, u_codes, length):
    """Prefix of 1/u for a unit power series given by codes."""
    from . import _kernels as K

    u0_inv = field.inv(u_codes[0])
    out = [u0_inv]
    tail = u_codes[1:]
    for rel in range(1, length):
        acc = K.conv_coeff(tail, out, rel - 1, field.q, field.mul_t,
                           field.add_t)
        out.append(field.neg(field.mul(u0_inv, acc)))
    return out


# ---------------------------------------------------------------------------
# decoder (automaton -> algebraic relation)

def decode(machine, field, degree_cap=32, verify_to=None, t_max=4):
    """Search for a relation c(z) + sum_i c_i(z) F^(q^i) = 0 satisfied by the
    series F whose coefficients the automaton computes, with deg bounds and
    Frobenius height growing up to the caps.  The result is verified to the
    reported precision by direct series arithmetic, not symbolically."""
    q = field.q
    if machine.base != q:
        raise DomainError("automaton base %d does not match q=%d"
                          % (machine.base, q))
    for o in machine.outputs:
        if not isinstance(o, int) or not (0 <= o < q):
            raise DomainError("decoder needs field-code outputs")

    B = 4
    while True:
        t = 0
        while t <= t_max:
            V = verify_to or max(256, 4 * (t + 2) * (B + 1))
            seq = machine.sequence(V)
            result = _hp_search(seq, field, t, B, V)
            if result is not None:
                R = result
                # honest verification pass on the series
                F = LaurentStream.from_codes(field, "asc", 0, seq,
                                             tail=lambda n: machine.eval(n))
                res = R.eval_stream(F)
                ok = all(res.coeff(n) == 0 for n in range(res.val, V))
                if ok:
                    report = {"verified_to": V, "height": t, "degree_cap": B}
                    return R, report
            t += 1
        B *= 2
        if B > degree_cap:
            raise NoRelationError(
                "no relation within degree cap %d and height %d"
                % (degree_cap, t_max))


def _hp_search(seq, field, t, B, V, need_c0=False):
    """One Hermite-Pade block search: columns z^j and z^j * F^(q^i),
    truncated to length V; returns a BivarPoly or None.  With need_c0 the
    dependence must involve the F^(q^0) block (so dR/dw != 0)."""
    q = field.q
    cols = []
    meta = []
    for j in range(B + 1):
        col = [0] * V
        if j < V:
            col[j] = 1
        cols.append(col)
        meta.append((-1, j))
    for i in range(t + 1):
        step = q ** i
        base = [0] * V
        for n, a in enumerate(seq):
            if n * step >= V:
                break
            base[n * step] = a
        for j in range(B + 1):
            col = [0] * V
            for n in range(V - j):
                if base[n]:
                    col[n + j] = base[n]
            cols.append(col)
            meta.append((i, j))
    if need_c0:
        def accept(cmb):
            return any(cmb[k] for k, (i, j) in enumerate(meta) if i == 0)
    else:
        def accept(cmb):
            return any(cmb[k] for k, (i, j) in enumerate(meta) if i >= 0)
    combo = _nullspace_combo(cols, field, accept)
    if combo is None:
        return None
    wexp = {}
    const = Poly.zero(field)
    for k, coef in enumerate(combo):
        if not coef:
            continue
        i, j = meta[k]
        if i < 0:
            const = const + Poly.monomial(field, j, coef)
        else:
            wexp.setdefault(i, Poly.zero(field))
            wexp[i] = wexp[i] + Poly.monomial(field, j, coef)
    max_pow = max(q ** i for i in wexp)
    wcoeffs = [Poly.zero(field) for _ in range(max_pow + 1)]
    wcoeffs[0] = const
    for i, poly in wexp.items():
        wcoeffs[q ** i] = poly
    return BivarPoly(field, wcoeffs)


def _nullspace_combo(cols, field, accept):
    """First dependence among the columns whose combination the `accept`
    predicate approves; Gaussian elimination over F_q."""
    import array

    q = field.q
    mul_t, add_t, sub_t = field.mul_t, field.add_t, field.sub_t
    pivots = []  # (row, vec, combo)
    ncols = len(cols)
    for j in range(ncols):
        vec = array.array("i", cols[j])
        combo = [0] * ncols
        combo[j] = 1
        for row, pvec, pcombo in pivots:
            factor = vec[row]
            if factor:
                neg = field.neg(factor)
                _axpy(vec, pvec, neg, field)
                for kk in range(ncols):
                    if pcombo[kk]:
                        combo[kk] = add_t[combo[kk] * q +
                                          mul_t[neg * q + pcombo[kk]]]
        lead = None
        for rr, c in enumerate(vec):
            if c:
                lead = rr
                break
        if lead is None:
            if accept(combo):
                return combo
            continue
        inv = field.inv(vec[lead])
        _scale(vec, inv, field)
        combo = [mul_t[c * q + inv] for c in combo]
        pivots.append((lead, vec, combo))
    return None


def _axpy(dst, src, c, field):
    from . import _kernels as K

    K.vec_addmul(dst, src, c, field.q, field.mul_t, field.add_t)


def _scale(vec, c, field):
    q, mul_t = field.q, field.mul_t
    for i, v in enumerate(vec):
        if v:
            vec[i] = mul_t[v * q + c]


def relation_from_prefix(codes, field, degree_cap=32, t_max=4,
                         min_margin=32):
    """Algebraic relation for a series given only by a coefficient prefix;
    the relation is verified against the prefix, so the caller gets a
    'verified to the prefix' statement, never a proof."""
    V = len(codes) - min_margin
    if V < 16:
        raise DomainError("prefix too short for relation discovery")
    q = field.q
    B = 2
    while B <= degree_cap:
        for t in range(1, t_max + 1):
            if (t + 2) * (B + 1) > V // 2:
                continue
            R = _hp_search(list(codes[:V]), field, t, B, V, need_c0=True)
            if R is not None:
                F = LaurentStream.from_codes(field, "asc", 0, list(codes))
                res = R.eval_stream(F)
                if all(res.coeff(n) == 0
                       for n in range(res.val, len(codes) - 1)):
                    return R
        B *= 2
    raise NoRelationError("no relation found for the component prefix "
                          "(caps: degree %d, height %d)" % (degree_cap, t_max))


# ---------------------------------------------------------------------------
# generalized digit paths

def span_christol(x, system, n_digits, validate=0, pi_inv=None,
                  prefix_len=None):
    """Digit expansion of an algebraic x over an additively closed span
    system together with an automaton producing the same digits: each span
    coordinate of the digit sequence is encoded through its own algebraic
    relation (discovered from the digit prefix) and the coordinate automata
    are combined by product."""
    from .expand import expand

    if system.span_gens is None:
        raise DomainError("span_christol needs a span system")
    ctx = system.ctx
    field = ctx.field
    base = field.q if system.span_base == "q" else field.p
    gens = system.span_gens
    u = len(gens)

    xs = x if isinstance(x, LaurentStream) else (
        series_of(x, ctx.orientation))
    d = expand(xs, system, n_digits, pi_inv=pi_inv)

    want = prefix_len or max(512, n_digits, validate)
    idx = d.index_prefix(want)
    comp_codes = []
    for i in range(u):
        divisor = base ** i
        comp_codes.append([(ix // divisor) % base for ix in idx])

    machines = []
    for comp in comp_codes:
        if all(c == 0 for c in comp):
            machines.append(DFAO(field.q, [[0] * field.q], [0], 0))
            continue
        R = relation_from_prefix(comp, field)
        seed = comp[: min(64, len(comp))]
        spec = AlgebraicSpec(field, R, 0, seed, "asc")
        machines.append(encode(spec, validate=0))

    combined = machines[0]
    mult = base
    if u > 1:
        combined = dfao_map_output_int(machines[0])
        for i in range(1, u):
            combined = dfao_product(
                combined, machines[i],
                lambda a, b, m=mult: a + b * m)
            mult *= base
    machine = dfao_minimize(combined)

    if validate:
        pref = d.index_prefix(validate)
        for n in range(validate):
            if machine.eval(n) != pref[n]:
                raise DomainError("span automaton disagrees with the greedy "
                                  "digits at %d" % n)
    return d, machine


def dfao_map_output_int(machine):
    return DFAO(machine.base, machine.transitions,
                [int(o) for o in machine.outputs], machine.initial)


def shifted_christol(x, system, xi, n_digits, validate_direct=True):
    """Digits of x over the shifted system Gamma + xi, computed through the
    unshifted span expansion of x - xi*pi^m/(1-pi) and the digit map
    b_n = a_n + xi; optionally cross-checked against the direct greedy
    expansion over the shifted system."""
    from .expand import DigitExpansion, expand
    from .residue import shift_system

    ctx = system.ctx
    field = ctx.field
    if system.span_gens is None:
        raise DomainError("shifted_christol starts from a span system")
    xi = _as_exact(xi) if _as_exact(xi) is not None else xi

    ex = _as_exact(x)
    if ex is not None and ctx.pi_is_rational():
        m = 0 if ex.is_zero() else math.floor(ctx.val(ex) / ctx.e)
        one = RatFunc.one(field)
        correction = xi * ctx.pi ** m / (one - ctx.pi)
        x_prime = ex - correction
        base_exp = expand(x_prime, system, n_digits, start=m)
    else:
        xs = x if isinstance(x, LaurentStream) else series_of(x, ctx.orientation)
        m = math.floor(xs.true_valuation() / ctx.e)
        one = LaurentStream.from_codes(field, ctx.orientation, 0, [1])
        pi_s = ctx.pi if isinstance(ctx.pi, LaurentStream) else \
            from_ratfunc_stream(ctx.pi, ctx.orientation)
        xi_s = xi if isinstance(xi, LaurentStream) else \
            from_ratfunc_stream(_as_exact(xi), ctx.orientation)
        pim = _power_stream(pi_s, m, ctx)
        correction = xi_s * pim * stream_inv(one - pi_s)
        x_prime = xs - correction
        base_exp = expand(x_prime, system, n_digits, start=m)

    shifted = shift_system(system, xi)

    def advance(state={"n": m}):
        n = state["n"]
        state["n"] = n + 1
        return base_exp.digit_index(n)

    out = DigitExpansion(shifted, m, advance, value=x)
    out.index_prefix(n_digits)

    if validate_direct:
        direct = expand(x, shifted, n_digits, start=m)
        if direct.index_prefix(n_digits) != out.index_prefix(n_digits):
            raise DomainError("shifted digits disagree with the direct "
                              "greedy expansion")
    return shifted, out


def _power_stream(pi_s, m, ctx):
    one = LaurentStream.from_codes(ctx.field, ctx.orientation, 0, [1])
    if m == 0:
        return one
    acc = one
    if m > 0:
        for _ in range(m):
            acc = acc * pi_s
        return acc
    inv = stream_inv(pi_s)
    for _ in range(-m):
        acc = acc * inv
    return acc


def q2_powerseries_digits(x, f1, f2, n_digits, validate_direct=True):
    """Digits of x in F_2[[z]] over the two-element power-series digit set
    {f_1, f_2} (constant terms 1 and 0) for the base z: the selector sequence
    s_n (1 where the digit is f_1) is the coefficient stream of
    (x + f_2/(1+z))/(f_1+f_2)."""
    from .expand import DigitExpansion, expand
    from .residue import BaseContext, ResidueSystem

    s1 = series_of(f1)
    s2 = series_of(f2)
    field = s1.ctx
    if field.q != 2:
        raise DomainError("the power-series digit construction is the q=2 "
                          "case")
    if s1.coeff(0) == 0 and s2.coeff(0) == 1:
        s1, s2 = s2, s1
        f1, f2 = f2, f1
    if not (s1.coeff(0) == 1 and s2.coeff(0) == 0):
        raise DomainError("digit constant terms must be 1 and 0")

    xs = x if isinstance(x, LaurentStream) else series_of(x)
    geom = from_ratfunc_stream(
        RatFunc(Poly.one(field), Poly(field, [1, 1])), "asc")
    gsum = s1 + s2
    selector = (xs + s2 * geom) * stream_inv(gsum)

    ctx = BaseContext(field, "vz", pi=Poly.x(field))
    system = ResidueSystem(ctx, [f2_if_stream(s2, f2), f2_if_stream(s1, f1)])
    # index 0 <-> constant term 0 (digit f2), index 1 <-> digit f1

    def advance(state={"n": 0}):
        n = state["n"]
        state["n"] = n + 1
        return selector.coeff(n)

    out = DigitExpansion(system, 0, advance, value=x)
    out.index_prefix(n_digits)

    if validate_direct:
        direct = expand(xs, system, n_digits, start=0)
        if direct.index_prefix(n_digits) != out.index_prefix(n_digits):
            raise DomainError("selector digits disagree with the greedy "
                              "expansion")
    return system, out


def f2_if_stream(stream, original):
    """Keep rational digit values exact when available."""
    ex = _as_exact(original)
    return ex if ex is not None else stream
