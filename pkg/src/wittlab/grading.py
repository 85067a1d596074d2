"""Gradations, homogeneous components and the lexicographic basis order."""

from dataclasses import dataclass

from .core import Element, partial, bracket
from .errors import (
    DimensionMismatch,
    EmptyComponent,
    NotAnnihilable,
    NotInZeroComponent,
    SchemeMismatch,
    ZeroElement,
)

LT, EQ, GT = -1, 0, 1


@dataclass(frozen=True)
class GradeScheme:
    """``ExpZk`` reads off the first k exponential indices, ``FullZnm`` is the
    Z^{n+m} grading (exponential indices plus shifted pure-polynomial degrees),
    ``WittZk`` the Z^k grading of the Laurent Witt algebra (n = 0 only)."""

    kind: str
    k: int = 0

    def __post_init__(self):
        if self.kind not in ("ExpZk", "FullZnm", "WittZk"):
            raise ValueError(f"unknown grading {self.kind!r}")
        if self.kind != "FullZnm" and self.k < 1:
            raise ValueError(f"{self.kind} needs k >= 1")

    @classmethod
    def exp(cls, k):
        return cls("ExpZk", k)

    @classmethod
    def full(cls):
        return cls("FullZnm")

    @classmethod
    def witt(cls, k):
        return cls("WittZk", k)

    def validate(self, dims):
        n, m = dims
        if self.kind == "ExpZk" and self.k > n:
            raise SchemeMismatch(f"ExpZk({self.k}) needs at least {self.k} exponential variables")
        if self.kind == "WittZk":
            if n != 0:
                raise SchemeMismatch("WittZk applies to signatures without exponential variables")
            if self.k > m:
                raise SchemeMismatch(f"WittZk({self.k}) needs at least {self.k} variables")

    def __str__(self):
        return "FullZnm" if self.kind == "FullZnm" else f"{self.kind}({self.k})"


def parse_scheme(text):
    """``exp:k``, ``full`` or ``witt:k``."""
    name, _, k = text.partition(":")
    if name == "full" and not k:
        return GradeScheme.full()
    if name in ("exp", "witt") and k.isdigit():
        return GradeScheme.exp(int(k)) if name == "exp" else GradeScheme.witt(int(k))
    raise ValueError(f"bad grading {text!r}")


def grade_key(b, scheme):
    scheme.validate(b.dims)
    n = b.n
    if scheme.kind == "ExpZk":
        return b.exp[: scheme.k]
    if scheme.kind == "FullZnm":
        tail = tuple(
            b.poly[t] - (1 if b.dir == t + 1 else 0) for t in range(n, len(b.poly))
        )
        return b.exp + tail
    return tuple(b.poly[u] - (1 if b.dir == u + 1 else 0) for u in range(scheme.k))


def homogeneous_components(e, scheme):
    parts = {}
    for b, c in e.items():
        parts.setdefault(grade_key(b, scheme), {})[b] = c
    return {key: Element(parts[key]) for key in sorted(parts, reverse=True)}


def lex_compare(b1, b2):
    if b1.dims != b2.dims:
        raise DimensionMismatch(f"{b1.dims} vs {b2.dims}")
    k1, k2 = tuple(b1), tuple(b2)
    return (k1 > k2) - (k1 < k2)


def leading_term(e):
    if not e:
        raise ZeroElement("the zero element has no leading term")
    b = e.support()[0]
    return b, e.coefficient(b)


def string_number(e):
    return len({b.exp for b in e})


def _component(e, alpha):
    alpha = tuple(alpha)
    return [b for b in e if b.exp[: len(alpha)] == alpha]


def largest_power(e, alpha, u):
    """Largest exponent of x_u among terms whose exponential prefix is ``alpha``."""
    terms = _component(e, alpha)
    if not terms:
        raise EmptyComponent(f"no terms with exponential index {tuple(alpha)}")
    if not 1 <= u <= len(terms[0].poly):
        raise DimensionMismatch(f"no variable x_{u}")
    return max(b.poly[u - 1] for b in terms)


def lp(e):
    """Direction-free largest power: max over u <= n of the x_u exponents."""
    if not e:
        raise ZeroElement("lp of the zero element")
    n = e.dims[0]
    return max((b.poly[u] for b in e for u in range(n)), default=0)


def ad_power(x, e, times):
    for _ in range(times):
        e = bracket(x, e)
    return e


def annihilate_component(e, u):
    """ad_{d_u}^{p+1}(e), p the largest x_u exponent; kills every a_u = 0 term.

    Terms with a_u = 0 and a negative x_u exponent are never annihilated by
    repeated d_u, so they are rejected.
    """
    if not e:
        return e
    n = e.dims[0]
    if not 1 <= u <= n:
        raise DimensionMismatch(f"u={u} must be an exponential direction 1..{n}")
    bad = [b for b in e if b.exp[u - 1] == 0 and b.poly[u - 1] < 0]
    if bad:
        raise NotAnnihilable(f"{bad[0]} has a negative power of x_{u}")
    p = max(b.poly[u - 1] for b in e)
    return ad_power(Element.single(partial(u, e.dims)), e, max(p, -1) + 1)


def split_zero_component(e0):
    """Split an element of the zero component into its W(n) and abelian parts."""
    if not e0:
        return e0, e0
    n = e0.dims[0]
    for b in e0:
        if any(b.exp) or any(b.poly[n:]):
            raise NotInZeroComponent(f"{b} is not in the zero-graded subalgebra")
    witt = Element({b: c for b, c in e0.items() if b.dir <= n}, dims=e0.dims)
    abelian = Element({b: c for b, c in e0.items() if b.dir > n}, dims=e0.dims)
    return witt, abelian
