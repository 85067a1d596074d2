from hypothesis import strategies as st

from wittlab.core import Basis, Element, FunctionElement, FunctionTerm, Signature
from wittlab.expr import parse_element, parse_function

W10 = Signature.W(1, 0)

ACCEPTANCE_LINES = []


def P(src, sig=W10):
    return parse_element(src, sig)


def F(src, dims=(1, 0)):
    return parse_function(src, dims)


def multi_index(length, lo=-3, hi=3, bounds=None):
    bounds = bounds or (None,) * length
    return st.tuples(*[st.integers(lo if b is None else max(lo, b), hi) for b in bounds])


def basis_st(sig, lo=-3, hi=3):
    return st.builds(
        Basis,
        multi_index(sig.n, lo, hi, sig.exp_lower_bounds()),
        multi_index(sig.nvars, lo, hi, sig.poly_lower_bounds()),
        st.integers(1, sig.nvars),
    )


def element_st(sig, max_terms=3, lo=-3, hi=3):
    coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.dictionaries(basis_st(sig, lo, hi), coeff, max_size=max_terms).map(
        lambda d: Element(d, dims=sig.dims)
    )


def function_st(dims, lo=-3, hi=3):
    n, m = dims
    return st.builds(
        lambda e, p: FunctionElement({FunctionTerm(e, p): 1}, dims=dims),
        multi_index(n, lo, hi),
        multi_index(n + m, lo, hi),
    )
