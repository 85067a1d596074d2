"""Invariant suite behind ``wittlab selftest``.

Each check returns ``(name, passed, detail)``; sizes are kept small so the
whole suite runs in a few seconds.
"""

import itertools
import random
from fractions import Fraction

from . import derivations as dv
from .core import (
    Basis,
    Element,
    FunctionElement,
    FunctionTerm,
    PathTerm,
    Signature,
    act,
    act_commutator,
    bracket,
    jacobi_defect,
    pathological_bracket,
)
from .expr import format_element, parse_element
from .grading import GradeScheme, grade_key
from .probe import TruncationBox, ideal_closure, is_ad_diagonal, subspace_is_ideal
from .qtorus import center_probe, theta_check, toral_probe


def random_basis(rng, sig, lo=-3, hi=3):
    bounds_e = sig.exp_lower_bounds()
    bounds_p = sig.poly_lower_bounds()
    exp = tuple(rng.randint(max(lo, b if b is not None else lo), hi) for b in bounds_e)
    poly = tuple(rng.randint(max(lo, b if b is not None else lo), hi) for b in bounds_p)
    return Basis(exp, poly, rng.randint(1, sig.nvars))


def random_element(rng, sig, terms=3, lo=-3, hi=3):
    acc = {}
    for _ in range(rng.randint(1, terms)):
        acc[random_basis(rng, sig, lo, hi)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Element(acc, dims=sig.dims)


def random_function(rng, dims, lo=-3, hi=3):
    n, m = dims
    exp = tuple(rng.randint(lo, hi) for _ in range(n))
    poly = tuple(rng.randint(lo, hi) for _ in range(n + m))
    return FunctionElement({FunctionTerm(exp, poly): 1}, dims=dims)


SMALL_SIGS = [
    Signature.W(1, 0),
    Signature.W(0, 2),
    Signature.W(1, 1),
    Signature.W(2, 1),
    Signature.Wstar(1, 1),
    Signature.Wrs(1, 1, 1, 0),
]


def check_oracle(rng, pairs=200):
    for _ in range(pairs):
        sig = rng.choice(SMALL_SIGS)
        e1, e2 = random_element(rng, sig), random_element(rng, sig)
        br = bracket(e1, e2)
        for _ in range(3):
            f = random_function(rng, sig.dims)
            if act(br, f) != act_commutator(e1, e2, f):
                return False, f"oracle mismatch on {e1} , {e2}"
    return True, f"{pairs} pairs"


def check_jacobi(rng, triples=100):
    for sig in SMALL_SIGS:
        for _ in range(triples):
            es = [random_element(rng, sig, terms=2) for _ in range(3)]
            if jacobi_defect(*es):
                return False, f"Jacobi fails in {sig}"
    return True, f"{triples} triples x {len(SMALL_SIGS)} signatures"


def check_literal_formula_fails():
    sig = Signature.W(0, 2)
    e1 = parse_element("X[0,1]D1", sig)
    e2 = parse_element("X[1,0]D2", sig)
    f = FunctionElement({FunctionTerm((), (1, 1)): 1}, dims=sig.dims)
    literal = act(bracket(e1, e2, literal=True), f)
    ok = literal != act_commutator(e1, e2, f) and act(bracket(e1, e2), f) == act_commutator(e1, e2, f)
    return ok, "printed coefficient l_i disagrees with the oracle on [x2 d1, x1 d2]"


def first_pathological_counterexample(max_index=2):
    terms = [
        PathTerm(i, j, d)
        for i, j, d in itertools.product(range(max_index + 1), range(max_index + 1), (1, 2))
    ]
    for t in itertools.product(terms, repeat=3):
        if jacobi_defect(*t, br=pathological_bracket):
            return t
    return None


def check_pathological():
    t = first_pathological_counterexample()
    return t is not None, f"first counterexample {t}"


def check_grading():
    box = (-1, 1)
    count = 0
    for sig, schemes in (
        (Signature.W(1, 1), [GradeScheme.exp(1), GradeScheme.full()]),
        (Signature.W(0, 2), [GradeScheme.witt(1), GradeScheme.witt(2), GradeScheme.full()]),
    ):
        basis = TruncationBox.uniform(sig.dims, exp=box, poly=box).basis_elements(sig)
        for b1, b2 in itertools.product(basis, repeat=2):
            br = bracket(Element.single(b1), Element.single(b2))
            for sch in schemes:
                want = tuple(x + y for x, y in zip(grade_key(b1, sch), grade_key(b2, sch)))
                if any(grade_key(b, sch) != want for b in br):
                    return False, f"{sch} not additive on {b1}, {b2}"
            count += 1
    return True, f"{count} pairs"


def check_derivations(rng, trials=5):
    trunc = dv.window(-2, 2, 2)
    for _ in range(trials):
        g = FunctionElement(
            {FunctionTerm((rng.randint(-2, 2),), (rng.randint(1, 2),)): rng.randint(-3, 3)},
            dims=(1, 0),
        )
        c, d = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3), 2)
        res = dv.decompose_derivation(dv.reconstruct_derivation(g, c, d, trunc))
        if (res.g, res.c, res.d, res.residual) != (g, c, d, 0):
            return False, f"round trip failed for {g}, {c}, {d}"
    for a, i in itertools.product(range(-4, 5), range(5)):
        f = FunctionElement({FunctionTerm((a,), (i,)): 1}, dims=(1, 0))
        if dv.derivative(dv.antiderivative(f)) != f:
            return False, f"antiderivative wrong on e^({a}x) x^{i}"
    return True, f"{trials} round trips, 45 antiderivatives"


def check_closure():
    W10 = Signature.W(1, 0)
    rep = ideal_closure(
        [parse_element("E[1]X[1]D1", W10)], W10, TruncationBox.uniform((1, 0))
    )
    Wp = Signature.Wplus()
    box = TruncationBox.uniform((1, 0), exp=(0, 3), poly=(0, 3))
    rep2 = ideal_closure([parse_element("E[1]X[0]D1", Wp)], Wp, box)
    ideal, _ = subspace_is_ideal(lambda b: b.exp[0] >= 1, Wp, box)
    ok = rep.reached_partials == (1,) and rep2.reached_partials == () and ideal
    return ok, f"W(1,0) dim {rep.dimension}, W+(1,0) dim {rep2.dimension}"


def check_torus():
    sig = Signature.W(1, 1)
    box = TruncationBox.uniform(sig.dims, exp=(-1, 1), poly=(0, 2))
    diag = [
        t
        for t in (1, 2)
        if is_ad_diagonal(Element.single(Basis((0,), tuple(int(k == t - 1) for k in range(2)), t)), sig, box)[0]
    ]
    return diag == [2], f"diagonal x_t d_t for t in {diag}"


def check_qtorus(rng):
    pairs = [((rng.randint(-3, 3), rng.randint(-3, 3)), (rng.randint(-3, 3), rng.randint(-3, 3))) for _ in range(100)]
    ok = not theta_check(pairs, 2) and center_probe(2, 2) == [(0, 0)] and toral_probe(2, 2) == []
    return ok, "theta, center, toral"


def check_roundtrip(rng, count=100):
    for _ in range(count):
        sig = rng.choice(SMALL_SIGS)
        e = random_element(rng, sig, terms=4)
        if parse_element(format_element(e), sig) != e:
            return False, f"round trip failed on {format_element(e)}"
    return True, f"{count} elements"


def run(seed=0):
    rng = random.Random(seed)
    return [
        ("bracket-oracle", *check_oracle(rng)),
        ("jacobi", *check_jacobi(rng)),
        ("literal-formula-fails", *check_literal_formula_fails()),
        ("pathological-jacobi", *check_pathological()),
        ("gradation", *check_grading()),
        ("derivations", *check_derivations(rng)),
        ("closure", *check_closure()),
        ("torus", *check_torus()),
        ("quantum-torus", *check_qtorus(rng)),
        ("parse-format", *check_roundtrip(rng)),
    ]
