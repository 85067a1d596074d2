import random

import pytest
from hypothesis import given, settings

from helpers import P, W10, element_st
from wittlab.core import Basis, Element, Signature, bracket
from wittlab.errors import EmptyGenerators, GeneratorOutsideBox, NoExponentialPart, ZeroElement
from wittlab.probe import (
    TruncationBox,
    ideal_closure,
    is_ad_diagonal,
    lemma1_witness,
    lemma2_reach,
    nonvanishing_ad,
    replay_closure,
    subspace_is_ideal,
)

WPLUS = Signature.Wplus()
BOX = TruncationBox.uniform((1, 0))
PLUS_BOX = TruncationBox.uniform((1, 0), exp=(0, 3), poly=(0, 3))


def one(src, sig=W10):
    (b,) = P(src, sig).support()
    return b


class TestPositivePowerWitness:
    def test_partial(self):
        s, lprime = lemma1_witness(P("D1"))
        assert s == one("X[2]D1")
        assert lprime == P("-2 X[1]D1") == bracket(P("X[2]D1"), P("D1"))

    def test_negative_power(self):
        s, lprime = lemma1_witness(P("E[1]X[-3]D1"))
        assert s.poly[0] >= 5
        # [x^5 d, e^x x^-3 d] = e^x x^2 d - 3 e^x x d - 5 e^x x d
        assert lprime == P("E[1]X[2]D1 - 8 E[1]X[1]D1")

    def test_zero(self):
        with pytest.raises(ZeroElement):
            lemma1_witness(Element.zero((1, 0)))

    @settings(max_examples=150, deadline=None)
    @given(element_st(Signature.W(1, 1), 3))
    def test_contract(self, l):
        if not l:
            return
        s, lprime = lemma1_witness(l)
        assert lprime and lprime == bracket(Element.single(s), l)
        assert all(v >= 1 for b in lprime for v in b.poly)


class TestReachRecipe:
    def test_single_step(self):
        rec = lemma2_reach(one("E[2]D1"))
        assert len(rec.steps) == 1
        assert rec.replay() == 2 * P("E[2]D1")

    def test_case_two(self):
        rec = lemma2_reach(one("E[1]X[2]D1"))
        assert rec.case == "II" and rec.coefficient == 2
        first = bracket(P("D1"), P("E[1]X[2]D1"))
        second = bracket(P("E[1]D1"), P("X[2]D1"))
        assert first - second == 2 * P("E[1]X[2]D1") == rec.replay()

    def test_case_one(self):
        sig = Signature.W(1, 1)
        rec = lemma2_reach(one("E[3]X[1,1]D2", sig))
        assert rec.case == "I" and rec.coefficient == 3
        assert rec.replay() == 3 * P("E[3]X[1,1]D2", sig)

    def test_no_exponential(self):
        with pytest.raises(NoExponentialPart):
            lemma2_reach(one("X[3]D1"))

    def test_start_dir(self):
        sig = Signature.W(2, 0)
        target = one("E[1,-2]X[1,1]D2", sig)
        assert lemma2_reach(target, 2).u == 2
        assert lemma2_reach(target).u == 1
        rec = lemma2_reach(target, 2)
        assert rec.case == "II" and rec.replay() == -4 * Element.single(target)

    def test_random_targets(self):
        rng = random.Random(3)
        sig = Signature.W(2, 1)
        for _ in range(300):
            exp = (rng.randint(-3, 3), rng.randint(-3, 3))
            if exp == (0, 0):
                continue
            target = Basis(exp, tuple(rng.randint(-3, 3) for _ in range(3)), rng.randint(1, 3))
            rec = lemma2_reach(target, rng.randint(1, 3))
            a_u = target.exp[rec.u - 1]
            assert a_u != 0
            expected = 2 * a_u if rec.case == "II" else a_u
            assert rec.coefficient == expected
            assert rec.replay() == expected * Element.single(target)


class TestNonvanishing:
    def test_examples(self):
        assert nonvanishing_ad(P("E[1]X[1]D1"), 1)
        assert not nonvanishing_ad(P("D1"), 1)
        assert not nonvanishing_ad(P("E[1]D1") - P("E[1]D1"), 1)

    @settings(max_examples=100, deadline=None)
    @given(element_st(Signature.W(2, 1), 4))
    def test_nonzero_exponent_never_vanishes(self, e):
        e = Element({b: c for b, c in e.items() if b.exp[0] != 0}, dims=e.dims)
        if e:
            assert nonvanishing_ad(e, 1)


class TestClosure:
    def test_reaches_partial(self):
        g = P("E[1]X[1]D1")
        rep = ideal_closure([g], W10, BOX)
        assert 1 in rep.reached_partials
        assert rep.dimension == 15
        assert replay_closure(rep, [g])

    def test_wplus_stays_in_ideal(self):
        g = P("E[1]D1", WPLUS)
        rep = ideal_closure([g], WPLUS, PLUS_BOX)
        assert rep.reached_partials == ()
        assert all(b.exp[0] >= 1 for e in rep.members for b in e)
        assert replay_closure(rep, [g])

    def test_errors(self):
        with pytest.raises(EmptyGenerators):
            ideal_closure([], W10, BOX)
        with pytest.raises(GeneratorOutsideBox):
            ideal_closure([P("E[5]D1")], W10, BOX)

    def test_dimension_bounded(self):
        rep = ideal_closure([P("X[2]D1")], W10, BOX)
        assert rep.dimension <= len(BOX.basis_elements(W10))

    def test_tampered_trace_is_detected(self):
        g = P("E[1]X[1]D1")
        rep = ideal_closure([g], W10, BOX)
        rep.members[3] = rep.members[3] + P("D1")
        assert not replay_closure(rep, [g])

    def test_monotone_in_boxes(self):
        rng = random.Random(11)
        small = TruncationBox.uniform((1, 0), exp=(-1, 1), poly=(0, 1))
        for _ in range(10):
            g = Element({Basis((rng.randint(-1, 1),), (rng.randint(0, 1),), 1): rng.randint(1, 3)})
            r_small = ideal_closure([g], W10, small)
            r_big = ideal_closure([g], W10, BOX)
            r_mult = ideal_closure([g], W10, small, BOX)
            assert set(r_small.reached_partials) <= set(r_big.reached_partials)
            assert set(r_small.reached_partials) <= set(r_mult.reached_partials)
            assert r_small.dimension <= r_mult.dimension

    def test_report_serialises(self):
        d = ideal_closure([P("E[1]X[1]D1")], W10, BOX).to_dict()
        assert d["reached_partials"] == [1] and d["traces"][0] == {"kind": "generator", "index": 0}


class TestIdeal:
    def test_i1(self):
        ok, w = subspace_is_ideal(lambda b: b.exp[0] >= 1, WPLUS, PLUS_BOX)
        assert ok and w is None

    def test_positive_power_is_not_ideal(self):
        ok, (q, p, val) = subspace_is_ideal(lambda b: b.poly[0] >= 1, WPLUS, PLUS_BOX)
        assert not ok
        assert (q, p) == (one("D1"), one("X[1]D1")) and val == P("D1")

    def test_full_space(self):
        assert subspace_is_ideal(lambda b: True, WPLUS, PLUS_BOX) == (True, None)


class TestAdDiagonal:
    def test_torus_element(self):
        sig = Signature.W(1, 1)
        box = TruncationBox.uniform(sig.dims, exp=(-2, 2), poly=(-1, 2))
        assert is_ad_diagonal(P("X[0,1]D2", sig), sig, box) == (True, None)

    def test_x_d_is_not_diagonal(self):
        box = TruncationBox.uniform((1, 0), exp=(-1, 1))
        ok, (b, val) = is_ad_diagonal(P("X[1]D1"), W10, box)
        assert not ok
        assert b == one("E[-1]D1") and val == P("E[-1]X[1]D1 + E[-1]X[0]D1")

    def test_partial_is_not_diagonal(self):
        box = TruncationBox((0,), (0,), (2,), (2,))
        ok, (b, val) = is_ad_diagonal(P("D1"), W10, box)
        assert not ok and b == one("X[2]D1")
        assert bracket(P("D1"), P("X[2]D1")) == P("2 X[1]D1")

    def test_zero(self):
        with pytest.raises(ZeroElement):
            is_ad_diagonal(Element.zero((1, 0)), W10, BOX)

    @pytest.mark.parametrize("n, m", [(1, 0), (2, 0), (1, 1), (1, 2), (0, 2)])
    def test_torus_dimension(self, n, m):
        sig = Signature.W(n, m)
        box = TruncationBox.uniform(sig.dims, exp=(-1, 1), poly=(0, 1))
        diag = []
        for t in range(1, n + m + 1):
            b = Basis((0,) * n, tuple(int(k == t - 1) for k in range(n + m)), t)
            if is_ad_diagonal(Element.single(b), sig, box)[0]:
                diag.append(t)
        assert diag == list(range(n + 1, n + m + 1))
