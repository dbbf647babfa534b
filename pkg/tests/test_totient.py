import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from totient_ratio import (
    FactoredNat,
    InvalidInput,
    Params,
    factorize,
    phi_of_term,
    phi_ratio,
    to_integer,
    totient,
)
from totient_ratio.factored import FactoredRational


def nat(mapping):
    return FactoredNat.from_mapping(mapping)


def phi_by_count(n):
    return sum(1 for r in range(1, n + 1) if math.gcd(r, n) == 1)


class TestParams:
    def test_valid(self):
        p = Params(2, 3, nat({}), nat({}))
        assert p.d == 1

    def test_rejects_max_below_two(self):
        with pytest.raises(InvalidInput):
            Params(1, 1)

    def test_rejects_nonpositive(self):
        with pytest.raises(InvalidInput):
            Params(0, 2)


class TestTotient:
    def test_one(self):
        assert totient(nat({})) == nat({})

    def test_47_squared(self):
        # phi(47^2) = 47 * 46 = 2 * 23 * 47
        assert totient(nat({47: 2})) == nat({2: 1, 23: 1, 47: 1})

    def test_12(self):
        assert totient(nat({2: 2, 3: 1})) == nat({2: 2})
        assert phi_by_count(12) == 4

    def test_small_count_oracle(self):
        for n in range(1, 400):
            assert to_integer(totient(factorize(n))) == phi_by_count(n)

    @given(st.integers(1, 300), st.integers(1, 300))
    def test_multiplicative_on_coprimes(self, u, v):
        if math.gcd(u, v) != 1:
            return
        lhs = totient(factorize(u * v))
        rhs = totient(factorize(u)).mul(totient(factorize(v)))
        assert lhs == rhs


class TestPhiOfTerm:
    def test_55_squared(self):
        # phi(55^2) = 2200 = 2^3 * 5^2 * 11
        assert phi_of_term(nat({}), nat({5: 1, 11: 1}), 2) == nat({2: 3, 5: 2, 11: 1})

    def test_trivial(self):
        assert phi_of_term(nat({}), nat({}), 3) == nat({})

    def test_with_coefficient(self):
        # phi(2 * 2^2) = phi(8) = 4
        assert phi_of_term(nat({2: 1}), nat({2: 1}), 2) == nat({2: 2})

    def test_matches_expanded(self):
        for c in (1, 2, 6, 9):
            for m in (1, 2, 10, 21):
                for e in (1, 2, 3):
                    got = phi_of_term(factorize(c), factorize(m), e)
                    assert to_integer(got) == phi_by_count(c * m**e)


class TestPhiRatio:
    def test_example_one(self):
        params = Params(2, 3)
        r = phi_ratio(params, factorize(55), factorize(22))
        assert r == FactoredRational.from_mapping({5: 1, 11: -1})

    def test_example_two(self):
        params = Params(2, 2)
        r = phi_ratio(params, factorize(13110), factorize(18612))
        assert r == FactoredRational.from_mapping({19: 1, 47: -1})

    def test_trivial(self):
        params = Params(3, 5)
        assert phi_ratio(params, nat({}), nat({})) == FactoredRational()

    @given(
        st.sampled_from([(2, 2), (2, 3), (3, 6), (2, 4)]),
        st.sampled_from([2, 3, 5, 7]),
        st.integers(1, 3),
        st.integers(1, 40),
        st.integers(1, 40),
    )
    def test_scaling_identity(self, ab, p, t, m_int, n_int):
        # bumping v_p(m) by (b/d)*t and v_p(n) by (a/d)*t together leaves the
        # ratio unchanged whenever p divides both k*m and l*n
        a, b = ab
        d = math.gcd(a, b)
        params = Params(a, b)
        m = factorize(m_int * p)
        n = factorize(n_int * p)
        before = phi_ratio(params, m, n)
        m2 = m.mul(nat({p: (b // d) * t}))
        n2 = n.mul(nat({p: (a // d) * t}))
        assert phi_ratio(params, m2, n2) == before
