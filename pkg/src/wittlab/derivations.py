"""Derivations of W*(1,0).

A derivation is given as a :class:`DerivationTable`, its images on a finite
window of basis elements ``e^{ax} x^i d``.  :func:`decompose_derivation` splits
it as ``ad_{g d} + c ad_d + D_d`` where ``D_d`` scales ``e^{ax} x^i d`` by
``d * a``.
"""

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType

from .core import (
    Basis,
    Element,
    FunctionElement,
    FunctionTerm,
    Signature,
    act,
    bracket,
    partial,
)
from .errors import (
    DimensionMismatch,
    MembershipViolation,
    NotShapedLikeDerivation,
    OutOfTruncation,
)
from .probe import SCHEMA_VERSION, TruncationBox

WSTAR_1_0 = Signature.Wstar(1, 0)
DIMS = (1, 0)
D = Element.single(partial(1, DIMS))


def _basis(a, i):
    return Basis((a,), (i,), 1)


def window(a_lo, a_hi, i_max):
    """Truncation a in [a_lo, a_hi], i in [0, i_max] of W*(1,0)."""
    return TruncationBox((a_lo,), (a_hi,), (0,), (i_max,))


class DerivationTable:
    """Images of a linear map on the basis elements of a truncation window."""

    def __init__(self, trunc, images):
        if trunc.dims != DIMS or trunc.poly_lo[0] < 0:
            raise MembershipViolation("derivation tables live on a window of W*(1,0)")
        images = {b: e for b, e in images.items()}
        missing = [b for b in trunc.basis_elements(WSTAR_1_0) if b not in images]
        if missing:
            raise OutOfTruncation(f"no image given for {missing[0]}")
        for b, e in images.items():
            WSTAR_1_0.check(Element.single(b))
            WSTAR_1_0.check(e)
        self.trunc = trunc
        self.images = MappingProxyType(images)

    @classmethod
    def from_operator(cls, op, trunc):
        return cls(trunc, {b: op(Element.single(b)) for b in trunc.basis_elements(WSTAR_1_0)})

    def image(self, b):
        try:
            return self.images[b]
        except KeyError:
            raise OutOfTruncation(f"{b} is outside the table") from None

    def __call__(self, e):
        out = Element.zero(DIMS)
        for b, c in e.items():
            out = out + c * self.image(b)
        return out

    def basis(self):
        return sorted(self.images)

    def with_image(self, b, e):
        images = dict(self.images)
        images[b] = e
        return DerivationTable(self.trunc, images)

    def to_dict(self):
        from .expr import format_basis, format_element

        return {
            "schema_version": SCHEMA_VERSION,
            "signature": WSTAR_1_0.spec,
            "trunc": self.trunc.to_dict(),
            "images": {format_basis(b): format_element(self.images[b]) for b in self.basis()},
        }

    @classmethod
    def from_dict(cls, d):
        from .expr import parse_basis, parse_element

        trunc = TruncationBox.from_dict(d["trunc"])
        images = {
            parse_basis(k, WSTAR_1_0): parse_element(v, WSTAR_1_0) for k, v in d["images"].items()
        }
        return cls(trunc, images)


def scalar_derivation_apply(d, e):
    """D_d(e^{ax} x^i d) = d*a e^{ax} x^i d (an additive map Z -> F is a -> d*a)."""
    d = Fraction(d)
    return Element({b: c * d * b.exp[0] for b, c in e.items()}, dims=e.dims)


def inner_derivation_apply(g, e):
    return bracket(g, e)


def in_range_pairs(trunc):
    """Ordered basis pairs of the window whose bracket stays inside it."""
    basis = trunc.basis_elements(WSTAR_1_0)
    pairs = []
    for b1 in basis:
        for b2 in basis:
            l1, l2 = Element.single(b1), Element.single(b2)
            if trunc.contains_element(bracket(l1, l2)):
                pairs.append((l1, l2))
    return pairs


def verify_leibniz(table, pairs):
    """Defects D[l1,l2] - [D l1, l2] - [l1, D l2]; returns only the nonzero ones
    as ``(index, l1, l2, defect)``."""
    defects = []
    for k, (l1, l2) in enumerate(pairs):
        lhs = table(bracket(l1, l2))
        rhs = bracket(table(l1), l2) + bracket(l1, table(l2))
        defect = lhs - rhs
        if defect:
            defects.append((k, l1, l2, defect))
    return defects


def derivative(f):
    return act(D, f)


def antiderivative(f):
    """g with g' = f on F[e^{+-x}, x], with zero constant term.

    Exponential terms are integrated by parts until the polynomial degree
    reaches zero.
    """
    if not f:
        return FunctionElement.zero(DIMS)
    if f.dims != DIMS:
        raise DimensionMismatch("antiderivative works in one variable")
    acc = {}
    for (exp, poly), c in f.items():
        a, i = exp[0], poly[0]
        if i < 0:
            raise MembershipViolation("negative powers of x have no antiderivative here")
        if a == 0:
            key = FunctionTerm((0,), (i + 1,))
            acc[key] = acc.get(key, 0) + c / (i + 1)
            continue
        coef = c / a
        for power in range(i, -1, -1):
            key = FunctionTerm((a,), (power,))
            acc[key] = acc.get(key, 0) + coef
            coef = -coef * power / a
    return FunctionElement(acc, dims=DIMS)


def times_partial(g):
    """g -> g d as an element of W*(1,0)."""
    return Element({Basis(t.exp, t.poly, 1): c for t, c in g.items()}, dims=DIMS)


@dataclass(frozen=True)
class DecompositionResult:
    g: FunctionElement
    c: Fraction
    d: Fraction
    residual: Fraction
    checked: tuple

    @property
    def lemma_d(self):
        """Coefficient of e^x d in D'(e^x d); equals d + c."""
        return self.d + self.c

    def to_dict(self):
        from .expr import format_basis, format_function

        return {
            "g": format_function(self.g),
            "c": str(self.c),
            "d": str(self.d),
            "residual": str(self.residual),
            "checked": [format_basis(b) for b in self.checked],
        }


def decompose_derivation(table):
    """Write ``table`` as ad_{g d} + c ad_d + D_d and measure the misfit.

    ``residual`` is the largest coefficient of D'(b) - (d+c) a b - c i e^{ax}x^{i-1} d
    over the checked window, where D' = table - ad_{g d}.
    """
    for b in (_basis(0, 0), _basis(0, 1), _basis(1, 0), _basis(-1, 0)):
        table.image(b)
    image_d = table.image(_basis(0, 0))
    if any(b.dir != 1 for b in image_d):
        raise NotShapedLikeDerivation("D(d) is not of the form f d")
    f = FunctionElement({FunctionTerm(b.exp, b.poly): c for b, c in image_d.items()}, dims=DIMS)
    # ad_{g d}(d) = -g' d, so g' = -f removes D(d)
    g = antiderivative(-f)
    gd = times_partial(g)

    def reduced(b):
        return table.image(b) - bracket(gd, Element.single(b))

    c = reduced(_basis(0, 1)).coefficient(_basis(0, 0))
    lemma_d = reduced(_basis(1, 0)).coefficient(_basis(1, 0))
    residual = Fraction(0)
    checked = tuple(table.basis())
    for b in checked:
        a, i = b.exp[0], b.poly[0]
        expected = {b: lemma_d * a}
        if i:
            expected[_basis(a, i - 1)] = c * i
        defect = reduced(b) - Element(expected, dims=DIMS)
        residual = max(residual, defect.max_abs_coefficient())
    return DecompositionResult(g, c, lemma_d - c, residual, checked)


def reconstruct_derivation(g, c, d, trunc):
    gd = times_partial(g)
    c = Fraction(c)

    def op(e):
        return bracket(gd, e) + c * bracket(D, e) + scalar_derivation_apply(d, e)

    return DerivationTable.from_operator(op, trunc)
