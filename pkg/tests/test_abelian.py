from itertools import product
from math import gcd, lcm, prod

import pytest
from hypothesis import given, strategies as st

from sha_predict.abelian import AbelianGroupStructure as G

cyclic = st.lists(st.integers(1, 24), max_size=3)


def element_orders(orders):
    """Orders of all elements of Z/n1 x ... x Z/nk by enumeration."""
    out = []
    for x in product(*(range(n) for n in orders)):
        o = 1
        for xi, n in zip(x, orders):
            o = lcm(o, n // gcd(xi, n))
        out.append(o)
    return out


def test_trivial():
    assert G().is_trivial and G().order == 1 and str(G()) == "trivial"


@pytest.mark.parametrize("orders, divisors", [
    ([6, 4], (2, 12)), ([2, 3], (6,)), ([2, 2, 9], (2, 18)), ([1, 5], (5,)), ([], ()),
])
def test_normal_form(orders, divisors):
    assert G.from_cyclic_orders(orders).elementary_divisors == divisors


def test_invalid_chain():
    with pytest.raises(ValueError):
        G((4, 6))
    with pytest.raises(ValueError):
        G((1, 2))


@given(cyclic)
def test_from_cyclic_orders_preserves_element_statistics(orders):
    g = G.from_cyclic_orders(orders)
    assert g.order == prod(orders)
    assert sorted(element_orders(list(g.elementary_divisors))) == sorted(element_orders(orders))
    assert G.from_element_orders(element_orders(orders)) == g


@given(cyclic, cyclic)
def test_direct_sum(a, b):
    assert G.from_cyclic_orders(a) + G.from_cyclic_orders(b) == G.from_cyclic_orders(a + b)


@given(cyclic)
def test_primary_decomposition(orders):
    g = G.from_cyclic_orders(orders)
    two = g.primary_part(2)
    assert two + g.odd_part() == g
    assert two.order & (two.order - 1) == 0
    assert g.odd_part().order % 2 == 1
