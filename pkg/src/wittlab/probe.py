"""Finite-window evidence for simplicity (and its failure for W+(1,0)).

Everything here works inside a :class:`TruncationBox`, a finite window of
exponents, so the ideal computed by :func:`ideal_closure` is a sound
under-approximation: every vector it reports is provably in the ideal, and
each one carries the bracket trace that produced it.
"""

import itertools
from dataclasses import dataclass, field

from .core import Basis, Element, bracket, partial
from .errors import (
    EmptyGenerators,
    GeneratorOutsideBox,
    NoExponentialPart,
    ZeroElement,
)
from .linalg import RowSpace

SCHEMA_VERSION = "witt-lab/1"


@dataclass(frozen=True)
class TruncationBox:
    exp_lo: tuple
    exp_hi: tuple
    poly_lo: tuple
    poly_hi: tuple

    def __post_init__(self):
        if len(self.exp_lo) != len(self.exp_hi) or len(self.poly_lo) != len(self.poly_hi):
            raise ValueError("bound tuples differ in length")
        for lo, hi in zip(self.exp_lo + self.poly_lo, self.exp_hi + self.poly_hi):
            if lo > hi:
                raise ValueError(f"empty range {lo}:{hi}")

    @classmethod
    def uniform(cls, dims, exp=(-2, 2), poly=(0, 2)):
        n, m = dims
        return cls((exp[0],) * n, (exp[1],) * n, (poly[0],) * (n + m), (poly[1],) * (n + m))

    @property
    def dims(self):
        n = len(self.exp_lo)
        return (n, len(self.poly_lo) - n)

    def contains(self, b):
        return (
            len(b.exp) == len(self.exp_lo)
            and len(b.poly) == len(self.poly_lo)
            and all(lo <= v <= hi for v, lo, hi in zip(b.exp, self.exp_lo, self.exp_hi))
            and all(lo <= v <= hi for v, lo, hi in zip(b.poly, self.poly_lo, self.poly_hi))
        )

    def contains_element(self, e):
        return all(self.contains(b) for b in e)

    def basis_elements(self, sig):
        """All basis elements of ``sig`` in the box, ascending lexicographic order."""
        ranges = [range(lo, hi + 1) for lo, hi in zip(self.exp_lo, self.exp_hi)]
        ranges += [range(lo, hi + 1) for lo, hi in zip(self.poly_lo, self.poly_hi)]
        n = len(self.exp_lo)
        out = []
        for idx in itertools.product(*ranges):
            for d in range(1, len(self.poly_lo) + 1):
                b = Basis(idx[:n], idx[n:], d)
                if sig.admits(b):
                    out.append(b)
        return out

    def to_dict(self):
        return {
            "exp": [[lo, hi] for lo, hi in zip(self.exp_lo, self.exp_hi)],
            "poly": [[lo, hi] for lo, hi in zip(self.poly_lo, self.poly_hi)],
        }

    @classmethod
    def from_dict(cls, d):
        exp = [tuple(r) for r in d["exp"]]
        poly = [tuple(r) for r in d["poly"]]
        return cls(
            tuple(r[0] for r in exp),
            tuple(r[1] for r in exp),
            tuple(r[0] for r in poly),
            tuple(r[1] for r in poly),
        )


@dataclass
class ClosureReport:
    dimension: int
    reached_partials: tuple
    generators_used: int
    overflow_discards: int
    members: list = field(default_factory=list)
    traces: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    def to_dict(self):
        from .expr import format_basis, format_element

        def trace(t):
            if t[0] == "generator":
                return {"kind": "generator", "index": t[1]}
            return {
                "kind": "bracket",
                "multiplier": format_basis(t[1]),
                "combination": {str(k): str(v) for k, v in sorted(t[2].items())},
            }

        return {
            "dimension": self.dimension,
            "reached_partials": list(self.reached_partials),
            "generators_used": self.generators_used,
            "overflow_discards": self.overflow_discards,
            "members": [format_element(e) for e in self.members],
            "traces": [trace(t) for t in self.traces],
        }


def ideal_closure(generators, sig, box, multiplier_box=None):
    """Smallest subspace of the box containing ``generators`` and stable under
    bracketing with basis elements of ``multiplier_box`` (results kept only when
    they fit in ``box``).

    For each multiplier q the kept part is the full preimage: every combination
    of current members whose bracket with q lands inside the box, not just the
    members whose individual brackets do.
    """
    if not generators:
        raise EmptyGenerators("ideal_closure needs at least one generator")
    multiplier_box = multiplier_box or box
    for g in generators:
        sig.check(g)
        if not g:
            raise ZeroElement("generators must be nonzero")
        if not box.contains_element(g):
            raise GeneratorOutsideBox(f"{g} leaves the truncation box")

    multipliers = [Element.single(q) for q in multiplier_box.basis_elements(sig)]
    members, traces = [], []
    space = RowSpace()

    def add(vec, trace):
        if space.insert(dict(vec.items()), {len(members): 1}) is None:
            members.append(vec)
            traces.append(trace)
            return True
        return False

    used = sum(add(g, ("generator", k)) for k, g in enumerate(generators))

    cache = {}
    overflow = set()
    changed = True
    while changed:
        changed = False
        for qi, q in enumerate(multipliers):
            images = []
            outside = RowSpace()
            relations = []
            for idx in range(len(members)):
                key = (qi, idx)
                if key not in cache:
                    cache[key] = bracket(q, members[idx])
                w = cache[key]
                images.append(w)
                out = {b: c for b, c in w.items() if not box.contains(b)}
                if out:
                    overflow.add(key)
                rel = outside.insert(out, {idx: 1})
                if rel is not None and rel:
                    relations.append(rel)
            for rel in relations:
                vec = Element.zero(sig.dims)
                for idx, lam in sorted(rel.items()):
                    vec = vec + lam * images[idx]
                if vec and add(vec, ("bracket", q.support()[0], dict(rel))):
                    changed = True

    reached = tuple(
        i
        for i in range(1, sig.nvars + 1)
        if box.contains(partial(i, sig.dims)) and space.contains({partial(i, sig.dims): 1})
    )
    rows = [
        (Element(row, dims=sig.dims), combo)
        for _, (row, combo) in sorted(space.rows.items(), reverse=True)
    ]
    return ClosureReport(
        dimension=len(members),
        reached_partials=reached,
        generators_used=used,
        overflow_discards=len(overflow),
        members=members,
        traces=traces,
        rows=rows,
    )


def replay_closure(report, generators):
    """Recompute every member and reduced row from its trace; True iff exact."""
    rebuilt = []
    for member, t in zip(report.members, report.traces):
        if t[0] == "generator":
            vec = generators[t[1]]
        else:
            q = Element.single(t[1])
            vec = sum((lam * bracket(q, rebuilt[idx]) for idx, lam in t[2].items()), 0)
            if isinstance(vec, int):
                return False
        if vec != member:
            return False
        rebuilt.append(vec)
    for row, combo in report.rows:
        total = sum((lam * rebuilt[idx] for idx, lam in combo.items()), 0)
        if total != row:
            return False
    return True


def lemma1_witness(l, max_steps=64):
    """Find s = x^u d_i with [s, l] nonzero and all polynomial exponents >= 1.

    u starts at 1 + max(0, -min exponent) per coordinate and is raised
    uniformly; directions are tried in ascending order at each size.
    """
    if not l:
        raise ZeroElement("lemma1_witness needs a nonzero element")
    n, m = l.dims
    nv = n + m
    base = [1 + max(0, -min(b.poly[k] for b in l)) for k in range(nv)]
    for extra in range(max_steps):
        u = tuple(x + extra for x in base)
        for i in range(1, nv + 1):
            s = Basis((0,) * n, u, i)
            lprime = bracket(Element.single(s), l)
            if lprime and all(v >= 1 for b in lprime for v in b.poly):
                return s, lprime
    raise RuntimeError("no witness found within the search limit")


@dataclass(frozen=True)
class BracketStep:
    sign: int
    left: Basis
    right: Basis

    def value(self):
        return self.sign * bracket(Element.single(self.left), Element.single(self.right))


@dataclass(frozen=True)
class Recipe:
    target: Basis
    u: int
    case: str  # "single", "I" (u != t) or "II" (u == t)
    coefficient: object
    steps: tuple

    def replay(self):
        return sum((s.value() for s in self.steps), Element.zero(self.target.dims))


def lemma2_reach(target, start_dir=None):
    """Bracket recipe producing a nonzero multiple of ``target`` from d_u.

    ``start_dir`` picks u when a_u != 0 there; otherwise the first exponential
    direction with a nonzero index is used.
    """
    usable = [k + 1 for k, a in enumerate(target.exp) if a]
    if not usable:
        raise NoExponentialPart(f"{target} has no exponential part")
    u = start_dir if start_dir in usable else usable[0]
    a_u = target.exp[u - 1]
    d_u = partial(u, target.dims)
    if target.poly[u - 1] == 0:
        return Recipe(target, u, "single", a_u, (BracketStep(1, d_u, target),))
    shifted = list(target.exp)
    shifted[u - 1] = 0
    e_u = [0] * len(target.exp)
    e_u[u - 1] = a_u
    left = Basis(tuple(e_u), d_u.poly, u)
    right = Basis(tuple(shifted), target.poly, target.dir)
    case = "II" if target.dir == u else "I"
    coeff = 2 * a_u if case == "II" else a_u
    return Recipe(target, u, case, coeff, (BracketStep(1, d_u, target), BracketStep(-1, left, right)))


def nonvanishing_ad(e, u):
    return bool(bracket(Element.single(partial(u, e.dims)), e)) if e else False


def subspace_is_ideal(span_spec, sig, box):
    """Check [q, p] stays in the span for p in the span, q anywhere in the box.

    Returns ``(True, None)`` or ``(False, (q, p, [q, p]))`` for the first
    offending pair in ascending order.
    """
    basis = box.basis_elements(sig)
    for p in basis:
        if not span_spec(p):
            continue
        for q in basis:
            val = bracket(Element.single(q), Element.single(p))
            if not all(span_spec(b) for b in val):
                return False, (q, p, val)
    return True, None


def is_ad_diagonal(candidate, sig, box):
    """Whether ad(candidate) maps every basis element of the box to a multiple
    of itself.  Returns ``(True, None)`` or ``(False, (b, [b, candidate]))``."""
    if not candidate:
        raise ZeroElement("is_ad_diagonal needs a nonzero candidate")
    sig.check(candidate)
    for b in box.basis_elements(sig):
        val = bracket(Element.single(b), candidate)
        if any(k != b for k in val):
            return False, (b, val)
    return True, None
