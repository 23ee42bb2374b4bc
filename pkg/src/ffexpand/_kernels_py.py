"""Pure-Python coefficient kernels.

Coefficient vectors are sequences of field codes (ints in 0..q-1, lowest
degree first).  Field arithmetic is table driven: `add_t`, `sub_t`, `mul_t`
are flat row-major q*q tables, `inv_t` maps a nonzero code to its inverse.
The compiled twin `_kernels_cy.pyx` implements the same signatures.
"""


def poly_mul(a, b, q, mul_t, add_t):
    na = len(a)
    nb = len(b)
    if na == 0 or nb == 0:
        return []
    out = [0] * (na + nb - 1)
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        row = ai * q
        for j in range(nb):
            bj = b[j]
            if bj:
                k = i + j
                out[k] = add_t[out[k] * q + mul_t[row + bj]]
    return out


def poly_divmod(f, g, q, mul_t, sub_t, inv_t):
    # g must have a nonzero leading coefficient
    nf = len(f)
    ng = len(g)
    rem = list(f)
    if nf < ng:
        return [], rem
    lead_inv = inv_t[g[ng - 1]]
    quo = [0] * (nf - ng + 1)
    for top in range(nf - 1, ng - 2, -1):
        c = rem[top]
        if c == 0:
            continue
        factor = mul_t[c * q + lead_inv]
        shift = top - (ng - 1)
        quo[shift] = factor
        frow = factor * q
        for j in range(ng):
            rem[shift + j] = sub_t[rem[shift + j] * q + mul_t[frow + g[j]]]
    del rem[ng - 1:]
    return quo, rem


def conv_coeff(a, b, n, q, mul_t, add_t):
    """Coefficient n of the product of a and b (prefixes, low first)."""
    lo = n - len(b) + 1
    if lo < 0:
        lo = 0
    hi = n if n < len(a) - 1 else len(a) - 1
    acc = 0
    for i in range(lo, hi + 1):
        ai = a[i]
        if ai:
            bj = b[n - i]
            if bj:
                acc = add_t[acc * q + mul_t[ai * q + bj]]
    return acc


def vec_addmul(dst, src, c, q, mul_t, add_t):
    """In place dst[j] += c*src[j] over the common length."""
    if c == 0:
        return
    row = c * q
    for j in range(len(src)):
        sj = src[j]
        if sj:
            dst[j] = add_t[dst[j] * q + mul_t[row + sj]]
