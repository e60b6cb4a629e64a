"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as st

from xell.exactnum import Poly, TruncatedSeries

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=6)
polys = st.lists(rationals, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def series(order: int = 5, const=None):
    head = st.just(Fraction(const)) if const is not None else small_rationals
    return st.tuples(head, st.lists(small_rationals, min_size=order, max_size=order)).map(
        lambda hc: TruncatedSeries([hc[0], *hc[1]]))
