"""Text form of elements.

Grammar (whitespace is insignificant)::

    element  := '0' | term (('+' | '-') term)*
    term     := [rational] factor+
    factor   := 'E[' int (',' int)* ']' | 'X[' int (',' int)* ']' | 'D' nat
    rational := int ['/' nat]

``E[a1,...,an]`` is e^{a1 x1}...e^{an xn}, ``X[b1,...]`` the monomial
x1^b1..., and ``Dk`` the partial derivative in direction k.  Function
expressions (what operators act on) use the same grammar without ``D``, and a
bare rational is a constant.
"""

import re
from fractions import Fraction

from .core import Basis, Element, FunctionElement, FunctionTerm
from .errors import DimensionMismatch, ExprSyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|(E\[|X\[|[\]\[,/+\-D*]))")


def _tokenize(src):
    tokens = []
    pos = 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {src[pos]!r}", pos)
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append(("$", len(src)))
    return tokens


class _Parser:
    def __init__(self, src, allow_dir):
        self.toks = _tokenize(src)
        self.i = 0
        self.allow_dir = allow_dir

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            shown = "end of input" if tok == "$" else repr(tok)
            raise ExprSyntaxError(f"expected {expected!r}, found {shown}", pos)
        self.i += 1
        return tok

    def nat(self):
        tok = self.peek()
        if not tok.isdigit():
            raise ExprSyntaxError("expected a number", self.pos())
        return int(self.take())

    def int_(self):
        if self.peek() == "-":
            self.take()
            return -self.nat()
        return self.nat()

    def index_list(self):
        vals = [self.int_()]
        while self.peek() == ",":
            self.take()
            vals.append(self.int_())
        self.take("]")
        return vals

    def rational(self):
        num = self.int_()
        if self.peek() == "/":
            self.take()
            pos = self.pos()
            den = self.nat()
            if den == 0:
                raise ExprSyntaxError("zero denominator", pos)
            return Fraction(num, den)
        return Fraction(num)

    def term(self):
        start = self.pos()
        coeff = Fraction(1)
        if self.peek().isdigit() or self.peek() == "-":
            coeff = self.rational()
            if self.peek() == "*":
                self.take()
        exps, polys, dirs = [], [], []
        while True:
            tok = self.peek()
            if tok == "E[":
                self.take()
                exps.append((self.index_list(), self.pos()))
            elif tok == "X[":
                self.take()
                polys.append((self.index_list(), self.pos()))
            elif tok == "D":
                if not self.allow_dir:
                    raise ExprSyntaxError("functions carry no direction", self.pos())
                self.take()
                dirs.append((self.nat(), self.pos()))
            else:
                break
        if self.allow_dir and len(dirs) != 1:
            raise ExprSyntaxError("each term needs exactly one direction D<k>", start)
        if not self.allow_dir and not exps and not polys:
            # bare constant
            return coeff, [], [], None, start
        if self.allow_dir and not exps and not polys and not dirs:
            raise ExprSyntaxError("expected a factor", self.pos())
        return coeff, exps, polys, dirs[0][0] if dirs else None, start

    def element(self):
        if self.peek() == "0" and self.toks[self.i + 1][0] == "$":
            self.take()
            return []
        terms = []
        sign = 1
        if self.peek() == "-" and self.toks[self.i + 1][0] in ("E[", "X[", "D"):
            self.take()
            sign = -1
        while True:
            coeff, exps, polys, d, start = self.term()
            terms.append((sign * coeff, exps, polys, d, start))
            tok = self.peek()
            if tok == "+":
                sign = 1
            elif tok == "-":
                sign = -1
            elif tok == "$":
                return terms
            else:
                raise ExprSyntaxError(f"unexpected {tok!r}", self.pos())
            self.take()


def _combine(factors, length, what):
    total = [0] * length
    for vals, pos in factors:
        if len(vals) != length:
            raise DimensionMismatch(
                f"{what} factor has {len(vals)} indices, expected {length} (near position {pos})"
            )
        total = [x + y for x, y in zip(total, vals)]
    return tuple(total)


def parse_element(src, sig):
    """Parse ``src`` into a canonical Element of ``sig`` (membership checked)."""
    terms = _Parser(src, allow_dir=True).element()
    n, nv = sig.n, sig.nvars
    acc = {}
    for coeff, exps, polys, d, start in terms:
        exp = _combine(exps, n, "E")
        poly = _combine(polys, nv, "X")
        if not 1 <= d <= nv:
            raise DimensionMismatch(f"direction D{d} outside 1..{nv} (near position {start})")
        b = Basis(exp, poly, d)
        acc[b] = acc.get(b, 0) + coeff
    return sig.check(Element(acc, dims=sig.dims))


def parse_basis(src, sig):
    e = parse_element(src, sig)
    if len(e) != 1 or e.coefficient(e.support()[0]) != 1:
        raise ExprSyntaxError("expected a single basis element with coefficient 1")
    return e.support()[0]


def parse_function(src, dims):
    """Parse a function expression with ``dims = (n, m)``."""
    n, m = dims
    terms = _Parser(src, allow_dir=False).element()
    acc = {}
    for coeff, exps, polys, _d, _start in terms:
        key = FunctionTerm(_combine(exps, n, "E"), _combine(polys, n + m, "X"))
        acc[key] = acc.get(key, 0) + coeff
    return FunctionElement(acc, dims=dims)


def _idx(vals):
    return ",".join(str(v) for v in vals)


def format_basis(b):
    head = f"E[{_idx(b.exp)}]" if b.exp else ""
    return f"{head}X[{_idx(b.poly)}]D{b.dir}"


def _format_monomial(t):
    head = f"E[{_idx(t.exp)}]" if t.exp else ""
    return f"{head}X[{_idx(t.poly)}]"


def _format_sum(pairs):
    parts = []
    for k, (body, c) in enumerate(pairs):
        if k == 0:
            parts.append(body if c == 1 else f"{c} {body}")
        else:
            mag = abs(c)
            sep = " + " if c > 0 else " - "
            parts.append(sep + (body if mag == 1 else f"{mag} {body}"))
    return "".join(parts) or "0"


def format_element(e):
    """Canonical text, terms in descending lexicographic order."""
    return _format_sum([(format_basis(b), c) for b, c in e.items()])


def format_function(f):
    return _format_sum([(_format_monomial(t), c) for t, c in f.items()])
