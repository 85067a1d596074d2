"""The Lie algebra of the quantum torus C_q[x^{+-1}, y^{+-1}], yx = qxy.

Two models: words ``x^i y^j`` with the commutator bracket, and the abstract
algebra on pairs ``(a, i)`` with ``[(a,i),(b,j)] = (q^{bi} - q^{aj}) (a+b, i+j)``.
The map sending the word x^h y^k to the pair (h, k) is a Lie isomorphism.
"""

import itertools
from fractions import Fraction
from typing import NamedTuple

from .core import _Combination
from .errors import InvalidQ


class TorusWord(NamedTuple):
    i: int
    j: int

    def __str__(self):
        return f"({self.i},{self.j})"


class TorusElement(_Combination):
    __slots__ = ()

    def __repr__(self):
        return f"TorusElement({format_torus(self)!r})"

    def __str__(self):
        return format_torus(self)


def format_torus(t):
    return " + ".join(f"{c} * {w}" for w, c in t.items()) or "0"


def check_q(q):
    """Rationals other than 0 and +-1 are never roots of unity."""
    q = Fraction(q)
    if q in (0, 1, -1):
        raise InvalidQ(f"q={q} must be nonzero and not a root of unity")
    return q


def vbar_bracket(a, i, b, j, q):
    """Coefficient and index of [(a,i),(b,j)]."""
    q = check_q(q)
    return q ** (b * i) - q ** (a * j), (a + b, i + j)


def word_product(w1, w2, q):
    """x^i y^j * x^l y^m = q^{jl} x^{i+l} y^{j+m}, using y^j x^l = q^{jl} x^l y^j."""
    return q ** (w1.j * w2.i), TorusWord(w1.i + w2.i, w1.j + w2.j)


def word_bracket(w1, w2, q):
    q = check_q(q)
    c12, w = word_product(w1, w2, q)
    c21, w_ = word_product(w2, w1, q)
    assert w == w_
    return TorusElement({w: c12 - c21})


def vbar_elements_bracket(e1, e2, q):
    """Bilinear extension of :func:`vbar_bracket` to TorusElements of pairs."""
    q = check_q(q)
    acc = {}
    for (a, i), c1 in e1.items():
        for (b, j), c2 in e2.items():
            k, key = vbar_bracket(a, i, b, j, q)
            if k:
                key = TorusWord(*key)
                acc[key] = acc.get(key, 0) + c1 * c2 * k
    return TorusElement(acc)


def theta(w):
    return TorusWord(w.i, w.j)


def theta_check(pairs, q, theta=theta):
    """Compare theta([w1, w2]) with [theta w1, theta w2] on each pair.

    Returns the pairs where they differ as ``(w1, w2, lhs, rhs)``.
    """
    q = check_q(q)
    defects = []
    for w1, w2 in pairs:
        w1, w2 = TorusWord(*w1), TorusWord(*w2)
        lhs = TorusElement({theta(w): c for w, c in word_bracket(w1, w2, q).items()})
        rhs = vbar_elements_bracket(
            TorusElement.single(theta(w1)), TorusElement.single(theta(w2)), q
        )
        if lhs != rhs:
            defects.append((w1, w2, lhs, rhs))
    return defects


def _words(bound):
    r = range(-bound, bound + 1)
    return [TorusWord(a, i) for a, i in itertools.product(r, r)]


def center_probe(bound, q):
    """Words whose bracket with every word in the window vanishes."""
    q = check_q(q)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    words = _words(bound)
    return [
        w for w in words
        if all(vbar_bracket(w.i, w.j, v.i, v.j, q)[0] == 0 for v in words)
    ]


def toral_probe(bound, q):
    """Nonzero words acting diagonally on every word of the window."""
    q = check_q(q)
    if bound < 1:
        raise ValueError("bound must be at least 1")
    words = _words(bound)
    found = []
    for h in words:
        if h == (0, 0):
            continue
        diagonal = True
        for v in words:
            coeff, target = vbar_bracket(h.i, h.j, v.i, v.j, q)
            if coeff and target != tuple(v):
                diagonal = False
                break
        if diagonal:
            found.append(h)
    return found
