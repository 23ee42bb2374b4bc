"""Literal syntax for field, polynomial, rational and series values.

Grammar (round-trips with the printers in algebra.py):

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

NAME is one of the variables supplied by the caller ('z' everywhere, 'g' for
the extension-field generator, 'w' inside bivariate literals).  Series
prefixes are written `[m; c_m, c_{m+1}, ...]` with coefficient literals in the
same element syntax.
"""

from .algebra import FieldElem, Poly, RatFunc
from .errors import ParseError


def _tokenize(text):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", int(text[i:j])))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j]))
            i = j
            continue
        if ch in "+-*/^()":
            toks.append((ch, ch))
            i += 1
            continue
        raise ParseError("unexpected character %r in %r" % (ch, text))
    toks.append(("end", None))
    return toks


class _Parser:
    def __init__(self, toks, atoms, one):
        self.toks = toks
        self.pos = 0
        self.atoms = atoms
        self.one = one

    def peek(self):
        return self.toks[self.pos][0]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError("expected %s, found %r" % (kind, tok[1]))
        self.pos += 1
        return tok

    def parse_expr(self):
        negate = False
        if self.peek() == "-":
            self.take()
            negate = True
        value = self.parse_term()
        if negate:
            value = -value
        while self.peek() in "+-":
            op = self.take()[0]
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self):
        value = self.parse_factor()
        while self.peek() in "*/":
            op = self.take()[0]
            rhs = self.parse_factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def parse_factor(self):
        value = self.parse_atom()
        if self.peek() == "^":
            self.take()
            exp = self.take("int")[1]
            value = value ** exp
        return value

    def parse_atom(self):
        kind, val = self.toks[self.pos]
        if kind == "int":
            self.take()
            return self.one * val if val != 1 else self.one
        if kind == "name":
            self.take()
            if val not in self.atoms:
                raise ParseError("unknown symbol %r" % val)
            return self.atoms[val]
        if kind == "(":
            self.take()
            value = self.parse_expr()
            self.take(")")
            return value
        raise ParseError("unexpected token %r" % (val,))


def eval_expr(text, atoms, one):
    """Evaluate an expression with the given atom values; `one` is the
    multiplicative unit used to embed integer literals."""
    parser = _Parser(_tokenize(text), atoms, one)
    value = parser.parse_expr()
    parser.take("end")
    return value


def parse_ratfunc(text, ctx, var="z"):
    atoms = {var: RatFunc.x(ctx)}
    if ctx.m > 1:
        # the generator g is the modulus root, code p (vector (0,1,0,...))
        atoms["g"] = RatFunc(Poly(ctx, [ctx.p]))
    value = eval_expr(text, atoms, RatFunc.one(ctx))
    if isinstance(value, RatFunc):
        return value
    raise ParseError("expression %r is not a rational function" % text)


def parse_poly(text, ctx, var="z"):
    value = parse_ratfunc(text, ctx, var)
    if not value.is_poly():
        raise ParseError("expression %r is not a polynomial" % text)
    return value.as_poly()


def parse_elem(text, ctx):
    value = parse_ratfunc(text, ctx)
    poly = value.as_poly() if value.is_poly() else None
    if poly is None or poly.degree > 0:
        raise ParseError("expression %r is not a field element" % text)
    return FieldElem(ctx, poly.coeff(0))


def parse_series_prefix(text, ctx):
    """`[m; c_m, c_{m+1}, ...]` -> (m, [codes])."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("series prefix must look like [m; c0, c1, ...]")
    body = text[1:-1]
    if ";" not in body:
        raise ParseError("series prefix needs a ';' after the start index")
    head, _, tail = body.partition(";")
    try:
        start = int(head.strip())
    except ValueError:
        raise ParseError("bad series start index %r" % head.strip())
    codes = []
    tail = tail.strip()
    if tail:
        for part in tail.split(","):
            codes.append(parse_elem(part.strip(), ctx).code)
    return start, codes


def format_series_prefix(start, codes, ctx):
    return "[%d; %s]" % (start, ", ".join(ctx.code_str(c) for c in codes))
