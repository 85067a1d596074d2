"""Elements of the generalized Witt algebras and their bracket.

A basis element ``e^{a.x} x^b d_i`` is stored as ``Basis(exp=a, poly=b, dir=i)``
where ``exp`` has length ``n`` and ``poly`` has length ``n + m``; directions are
1-based as in the usual notation.  Coefficients are :class:`fractions.Fraction`
throughout, so every identity is checked exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import DimensionMismatch, MembershipViolation, NotEmbeddable

VARIANTS = ("W", "Wstar", "Wrs", "Wplus", "Witt")


@dataclass(frozen=True)
class Signature:
    """Which algebra an element lives in.

    ``variant`` is one of ``W`` (all integer exponents), ``Wstar`` (polynomial
    exponents non-negative), ``Wrs`` (polynomial exponents free at positions
    ``1..r`` and ``n+1..n+s``, non-negative elsewhere), ``Wplus`` (the algebra
    spanned by ``e^{ax} x^i d`` with ``a, i >= 0``) and ``Witt`` (no exponential
    variables, Laurent polynomial coefficients).
    """

    variant: str
    n: int
    m: int
    r: int = 0
    s: int = 0

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown algebra variant {self.variant!r}")
        if self.n < 0 or self.m < 0:
            raise ValueError("n and m must be non-negative")
        if self.n + self.m == 0:
            raise ValueError("the algebra needs at least one variable")
        if self.variant == "Wplus" and (self.n, self.m) != (1, 0):
            raise ValueError("Wplus is only defined for n=1, m=0")
        if self.variant == "Witt" and self.n != 0:
            raise ValueError("Witt signatures have n=0")
        if self.variant == "Wrs":
            if not (0 <= self.r <= self.n and 0 <= self.s <= self.m):
                raise ValueError("Wrs needs r <= n and s <= m")
        elif self.r or self.s:
            raise ValueError("r and s only apply to Wrs")

    @classmethod
    def W(cls, n, m):
        return cls("W", n, m)

    @classmethod
    def Wstar(cls, n, m):
        return cls("Wstar", n, m)

    @classmethod
    def Wrs(cls, n, m, r, s):
        return cls("Wrs", n, m, r, s)

    @classmethod
    def Wplus(cls):
        return cls("Wplus", 1, 0)

    @classmethod
    def Witt(cls, k):
        return cls("Witt", 0, k)

    @property
    def dims(self):
        return (self.n, self.m)

    @property
    def nvars(self):
        return self.n + self.m

    def poly_lower_bounds(self):
        """Per-coordinate lower bound on polynomial exponents (None = unbounded)."""
        n, m = self.n, self.m
        if self.variant in ("W", "Witt"):
            return (None,) * (n + m)
        if self.variant in ("Wstar", "Wplus"):
            return (0,) * (n + m)
        free = set(range(self.r)) | set(range(n, n + self.s))
        return tuple(None if k in free else 0 for k in range(n + m))

    def exp_lower_bounds(self):
        if self.variant == "Wplus":
            return (0,)
        return (None,) * self.n

    def admits(self, key):
        """Membership predicate for a Basis or FunctionTerm."""
        if len(key.exp) != self.n or len(key.poly) != self.n + self.m:
            return False
        if isinstance(key, Basis) and not 1 <= key.dir <= self.n + self.m:
            return False
        for v, lo in zip(key.exp, self.exp_lower_bounds()):
            if lo is not None and v < lo:
                return False
        for v, lo in zip(key.poly, self.poly_lower_bounds()):
            if lo is not None and v < lo:
                return False
        return True

    def check(self, element):
        """Raise MembershipViolation unless every support term is admitted."""
        for b in element:
            if b.dims != self.dims:
                raise DimensionMismatch(f"{b} does not live in {self}")
            if not self.admits(b):
                raise MembershipViolation(f"{b} is not a basis element of {self}")
        return element

    @property
    def spec(self):
        if self.variant == "Witt":
            return f"Witt:{self.m}"
        if self.variant == "Wrs":
            return f"Wrs:{self.n},{self.m},{self.r},{self.s}"
        return f"{self.variant}:{self.n},{self.m}"

    def __str__(self):
        if self.variant == "Witt":
            return f"W({self.m})"
        if self.variant == "Wrs":
            return f"W({self.n},{self.m},{self.r},{self.s})"
        if self.variant == "Wplus":
            return "W+(1,0)"
        star = "*" if self.variant == "Wstar" else ""
        return f"W{star}({self.n},{self.m})"


def parse_signature(text):
    """Parse ``W:n,m``, ``Wstar:n,m``, ``Wrs:n,m,r,s``, ``Wplus:1,0`` or ``Witt:k``."""
    name, _, rest = text.partition(":")
    try:
        nums = [int(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise ValueError(f"bad signature {text!r}") from None
    arity = {"W": 2, "Wstar": 2, "Wrs": 4, "Wplus": 2, "Witt": 1}
    if name not in arity or len(nums) != arity[name]:
        raise ValueError(f"bad signature {text!r}")
    if name == "Witt":
        return Signature.Witt(nums[0])
    return Signature(name, *nums)


def _shift(idx, pos, delta):
    """Add ``delta`` to the 1-based coordinate ``pos`` of a multi-index."""
    out = list(idx)
    out[pos - 1] += delta
    return tuple(out)


def _add(u, v):
    return tuple(x + y for x, y in zip(u, v))


class Basis(NamedTuple):
    exp: tuple
    poly: tuple
    dir: int

    @property
    def n(self):
        return len(self.exp)

    @property
    def dims(self):
        return (len(self.exp), len(self.poly) - len(self.exp))

    def __str__(self):
        from .expr import format_basis

        return format_basis(self)


class FunctionTerm(NamedTuple):
    exp: tuple
    poly: tuple

    @property
    def dims(self):
        return (len(self.exp), len(self.poly) - len(self.exp))

    def __str__(self):
        from .expr import format_function

        return format_function(FunctionElement({self: 1}))


class PathTerm(NamedTuple):
    """``x1^i x2^j (x1 x2 d_dir)`` in the non-Lie example on F[x1, x2]."""

    i: int
    j: int
    dir: int


class _Combination:
    """Finitely supported map key -> Fraction with zero coefficients dropped.

    Iteration visits keys in descending tuple order, which for :class:`Basis`
    is the lexicographic order on ``(exp, poly, dir)``.
    """

    __slots__ = ("_terms", "dims")

    def __init__(self, terms=None, dims=None):
        acc = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for key, c in items:
                c = Fraction(c)
                if c:
                    acc[key] = acc.get(key, 0) + c
        self._init(acc, dims)

    def _init(self, acc, dims):
        terms = {k: c for k, c in sorted(acc.items(), reverse=True) if c}
        key_dims = {getattr(k, "dims", None) for k in terms}
        if len(key_dims) > 1:
            raise DimensionMismatch(f"mixed dimensions {sorted(key_dims)}")
        if key_dims:
            found = key_dims.pop()
            if dims is not None and found is not None and tuple(dims) != found:
                raise DimensionMismatch(f"terms have dimensions {found}, expected {tuple(dims)}")
            dims = found
        self._terms = terms
        self.dims = tuple(dims) if dims is not None else None

    @classmethod
    def _raw(cls, acc, dims=None):
        obj = cls.__new__(cls)
        obj._init(acc, dims)
        return obj

    @classmethod
    def zero(cls, dims=None):
        return cls._raw({}, dims)

    @classmethod
    def single(cls, key, coeff=1):
        return cls({key: coeff})

    def items(self):
        return self._terms.items()

    def support(self):
        return list(self._terms)

    def coefficient(self, key):
        return self._terms.get(key, Fraction(0))

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __contains__(self, key):
        return key in self._terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _merge_dims(self, other):
        if self.dims and other.dims and self.dims != other.dims:
            raise DimensionMismatch(f"{self.dims} vs {other.dims}")
        return self.dims or other.dims

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if type(other) is not type(self):
            return NotImplemented
        dims = self._merge_dims(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return self._raw(acc, dims)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self._terms.items()}, self.dims)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return self._raw({k: scalar * c for k, c in self._terms.items()}, self.dims)

    __rmul__ = __mul__

    def max_abs_coefficient(self):
        return max((abs(c) for c in self._terms.values()), default=Fraction(0))


class Element(_Combination):
    """A linear combination of :class:`Basis` elements."""

    __slots__ = ()

    def __repr__(self):
        from .expr import format_element

        return f"Element({format_element(self)!r})"

    def __str__(self):
        from .expr import format_element

        return format_element(self)


class FunctionElement(_Combination):
    """A linear combination of ``e^{g.x} x^d`` monomials (what the algebra acts on)."""

    __slots__ = ()

    def __repr__(self):
        from .expr import format_function

        return f"FunctionElement({format_function(self)!r})"

    def __str__(self):
        from .expr import format_function

        return format_function(self)


class PathElement(_Combination):
    __slots__ = ()

    def __repr__(self):
        body = " + ".join(f"{c}*({t.i},{t.j},d{t.dir})" for t, c in self.items())
        return f"PathElement({body or '0'})"


def make_basis(exp, poly, dir, sig):
    exp, poly = tuple(exp), tuple(poly)
    if len(exp) != sig.n or len(poly) != sig.n + sig.m:
        raise DimensionMismatch(
            f"expected {sig.n} exponential and {sig.n + sig.m} polynomial indices"
        )
    if not 1 <= dir <= sig.n + sig.m:
        raise DimensionMismatch(f"direction {dir} outside 1..{sig.n + sig.m}")
    b = Basis(exp, poly, dir)
    if not sig.admits(b):
        raise MembershipViolation(f"{b} is not a basis element of {sig}")
    return b


def partial(u, dims):
    """The basis element d_u of W(n,m) with ``dims = (n, m)``."""
    n, m = dims
    return Basis((0,) * n, (0,) * (n + m), u)


def _bracket_terms(b1, b2, literal=False):
    """Yield (Basis, int) pairs of [b1, b2]; possibly repeated keys.

    [f d_i, g d_j] = f d_i(g) d_j - g d_j(f) d_i with f = e^a x^l, g = e^b x^t.
    ``literal`` reproduces the printed variant whose last coefficient reads
    l_i instead of l_j; it is kept only to demonstrate that it is wrong.
    """
    a, l, i = b1
    b, t, j = b2
    n = len(a)
    exp = _add(a, b)
    poly = _add(l, t)
    if i <= n and b[i - 1]:
        yield Basis(exp, poly, j), b[i - 1]
    if t[i - 1]:
        yield Basis(exp, _shift(poly, i, -1), j), t[i - 1]
    if j <= n and a[j - 1]:
        yield Basis(exp, poly, i), -a[j - 1]
    k = l[i - 1] if literal else l[j - 1]
    if k:
        yield Basis(exp, _shift(poly, j, -1), i), -k


def _check_dims(x, y):
    if x.dims and y.dims and x.dims != y.dims:
        raise DimensionMismatch(f"{x.dims} vs {y.dims}")
    return x.dims or y.dims


def bracket_basis(b1, b2, literal=False):
    dims = _check_dims(b1, b2)
    acc = {}
    for key, c in _bracket_terms(b1, b2, literal):
        acc[key] = acc.get(key, 0) + c
    return Element._raw(acc, dims)


def bracket(e1, e2, literal=False):
    """Bilinear extension of :func:`bracket_basis`."""
    dims = _check_dims(e1, e2)
    acc = {}
    for b1, c1 in e1.items():
        for b2, c2 in e2.items():
            c = c1 * c2
            for key, k in _bracket_terms(b1, b2, literal):
                acc[key] = acc.get(key, 0) + c * k
    return Element._raw(acc, dims)


def act(e, f):
    """Apply the differential operator ``e`` to the function ``f``."""
    dims = _check_dims(e, f)
    acc = {}
    for (a, l, i), c in e.items():
        n = len(a)
        for (g, d), k in f.items():
            exp = _add(a, g)
            poly = _add(l, d)
            if i <= n and g[i - 1]:
                key = FunctionTerm(exp, poly)
                acc[key] = acc.get(key, 0) + c * k * g[i - 1]
            if d[i - 1]:
                key = FunctionTerm(exp, _shift(poly, i, -1))
                acc[key] = acc.get(key, 0) + c * k * d[i - 1]
    return FunctionElement._raw(acc, dims)


def act_commutator(e1, e2, f):
    """Commutator of the two operators evaluated on ``f`` (bracket oracle)."""
    return act(e1, act(e2, f)) - act(e2, act(e1, f))


def jacobi_defect(e1, e2, e3, br=bracket):
    return br(br(e1, e2), e3) + br(br(e2, e3), e1) + br(br(e3, e1), e2)


def pathological_bracket_terms(t1, t2):
    """The bracket on the F[x1, x2] example, rule by rule as printed."""
    if t1.dir == 1 and t2.dir == 1:
        i1, j1, i2, j2 = t1.i, t1.j, t2.i, t2.j
        return {PathTerm(i1 + i2, j1 + j2 + 1, 1): i2 - i1}
    if t1.dir == 1 and t2.dir == 2:
        i1, j1, a1, b2 = t1.i, t1.j, t2.i, t2.j
        out = {}
        for key, c in (
            (PathTerm(i1 + a1, j1 + b2 + 1, 2), a1),
            (PathTerm(i1 + a1 + 1, j1 + b2, 1), -j1),
        ):
            out[key] = out.get(key, 0) + c
        return out
    if t1.dir == 2 and t2.dir == 1:
        return {k: -c for k, c in pathological_bracket_terms(t2, t1).items()}
    a1, b1, a2, b2 = t1.i, t1.j, t2.i, t2.j
    return {PathTerm(a1 + a2 + 1, b1 + b2, 2): b2 - b1}


def pathological_bracket(p1, p2):
    if isinstance(p1, PathTerm):
        p1 = PathElement.single(p1)
    if isinstance(p2, PathTerm):
        p2 = PathElement.single(p2)
    acc = {}
    for t1, c1 in p1.items():
        for t2, c2 in p2.items():
            for key, k in pathological_bracket_terms(t1, t2).items():
                acc[key] = acc.get(key, 0) + c1 * c2 * k
    return PathElement._raw(acc)


def embed(e, src, dst):
    """Pad multi-indices with zeros to move ``e`` from ``src`` into ``dst``.

    Exponential indices are padded at the end of the exponential block and
    polynomial indices at the end of the polynomial block, so x_k keeps its
    name; the new exponential indices are all zero, hence the bracket commutes
    with the embedding.
    """
    if dst.n < src.n or dst.m < src.m:
        raise NotEmbeddable(f"cannot embed {src} into {dst}")
    src.check(e)
    pad_e = (0,) * (dst.n - src.n)
    pad_p = (0,) * (dst.nvars - src.nvars)
    out = Element(
        {Basis(b.exp + pad_e, b.poly + pad_p, b.dir): c for b, c in e.items()},
        dims=dst.dims,
    )
    return dst.check(out)
