import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from robustpm.errors import DomainError, MalformedInputError
from robustpm.poly import (
    Polynomial,
    cauchy_root_bound,
    eval_complex,
    from_roots,
    is_hurwitz,
    poly_arith,
    routh_first_column,
)

coef = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
polys = st.lists(coef, min_size=1, max_size=9).map(Polynomial)


def stable_factors(draw_a, draw_b):
    p = Polynomial([1.0])
    for a in draw_a:
        p = p * Polynomial([a, 1.0])
    for b, c in draw_b:
        p = p * Polynomial([c, b, 1.0])
    return p


positive = st.floats(0.011, 5.0)
stable_polys = st.builds(
    stable_factors,
    st.lists(positive, max_size=3),
    st.lists(st.tuples(positive, positive), max_size=2),
).filter(lambda p: p.degree >= 1)


class TestConstruction:
    def test_trims_exact_trailing_zeros(self):
        assert Polynomial([1, 2, 0, 0]).coeffs == (1.0, 2.0)
        assert Polynomial([0, 0]).coeffs == (0.0,)
        assert Polynomial([]).is_zero

    def test_near_zero_leading_kept(self):
        assert Polynomial([1, 1e-300]).degree == 1

    def test_rejects_non_finite(self):
        with pytest.raises(MalformedInputError):
            Polynomial([1, float("nan")])
        with pytest.raises(MalformedInputError):
            Polynomial([float("inf")])

    def test_zero_polynomial(self):
        z = Polynomial([0])
        assert z.is_zero and z.degree == 0 and z.to_list() == [0.0]


class TestArith:
    def test_difference_of_squares(self):
        assert poly_arith(Polynomial([1, 1]), Polynomial([1, -1]), "mul").coeffs == (1.0, 0.0, -1.0)

    def test_cube(self):
        p = poly_arith(Polynomial([1, 1]), Polynomial([1, 2, 1]), "mul")
        assert p.coeffs == (1.0, 3.0, 3.0, 1.0)

    def test_sub_cancels_to_zero(self):
        p = Polynomial([1, 2, 3])
        assert poly_arith(p, p, "sub").is_zero

    def test_scale(self):
        assert poly_arith(Polynomial([1, 2]), None, "scale", 3.0).coeffs == (3.0, 6.0)
        assert poly_arith(Polynomial([1, 2]), None, "scale", 0.0).is_zero

    def test_unknown_op(self):
        with pytest.raises((ValueError, MalformedInputError)):
            poly_arith(Polynomial([1]), Polynomial([1]), "div")

    @given(polys)
    def test_add_zero_identity(self, p):
        assert poly_arith(p, Polynomial([0]), "add") == p

    @given(polys, polys, st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
    def test_eval_multiplicative(self, p, q, z):
        lhs = eval_complex(p * q, z)
        rhs = eval_complex(p, z) * eval_complex(q, z)
        scale = (sum(abs(c) for c in p.coeffs) * sum(abs(c) for c in q.coeffs)) * max(1.0, abs(z)) ** 16
        assert abs(lhs - rhs) <= 1e-9 * max(scale, 1.0)


class TestEval:
    def test_root_of_s2_plus_1(self):
        assert eval_complex(Polynomial([1, 0, 1]), 1j) == 0

    def test_cube_at_j(self):
        assert eval_complex(Polynomial([1, 3, 3, 1]), 1j) == pytest.approx(-2 + 2j)

    @given(polys)
    def test_constant_term(self, p):
        assert eval_complex(p, 0) == p.coeffs[0]

    def test_call_matches(self):
        p = Polynomial([1, -2, 0.5])
        assert p(2.0) == pytest.approx(eval_complex(p, 2.0))


class TestHurwitz:
    def test_first_order(self):
        assert is_hurwitz(Polynomial([1, 1])).stable

    def test_marginal_pair(self):
        r = is_hurwitz(Polynomial([1, 0, 1]))
        assert not r.stable and r.reason == "zero_pivot"

    def test_stable_quartic(self):
        assert is_hurwitz(Polynomial([6, 11, 8, 4, 1])).stable

    def test_rhp_root(self):
        r = is_hurwitz(Polynomial([-6, 1, 4, 1]))
        assert not r.stable and r.reason in ("negative_pivot", "zero_pivot")

    def test_s3_plus_s(self):
        assert not is_hurwitz(Polynomial([0, 1, 0, 1])).stable

    def test_negative_leading_normalized(self):
        assert is_hurwitz(Polynomial([-2, -3, -1])).stable

    def test_constant_is_stable(self):
        assert is_hurwitz(Polynomial([3])).stable

    def test_zero_raises(self):
        with pytest.raises(MalformedInputError):
            is_hurwitz(Polynomial([0]))

    def test_tiny_leading(self):
        r = is_hurwitz(Polynomial([1, 1, 1e-14]))
        assert not r.stable and r.reason == "zero_leading"

    def test_routh_first_column_values(self):
        # s^3 + 2 s^2 + 3 s + 4: first column 1, 2, (6-4)/2 = 1, 4
        assert routh_first_column([4, 3, 2, 1]) == pytest.approx([1, 2, 1, 4])

    @settings(max_examples=200)
    @given(stable_polys)
    def test_stable_constructions(self, p):
        assert is_hurwitz(p).stable

    @settings(max_examples=200)
    @given(stable_polys, positive)
    def test_rhp_factor_detected(self, p, r):
        assert not is_hurwitz(p * Polynomial([-r, 1])).stable

    @settings(max_examples=200)
    @given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1,
                    max_size=4),
           st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1,
                    max_size=4))
    def test_product_rule(self, rp, rq):
        def build(roots):
            rs = []
            for z in roots:
                if abs(z.real) < 0.05:
                    z = complex(0.05 if z.real >= 0 else -0.05, z.imag)
                rs += [z, z.conjugate()] if abs(z.imag) > 0.05 else [complex(z.real, 0)]
            return from_roots(rs)

        p, q = build(rp), build(rq)
        both = is_hurwitz(p).stable and is_hurwitz(q).stable
        prod = is_hurwitz(p * q)
        if prod.stable:
            assert both
        elif both:
            # clustered roots near the axis can shrink a pivot below the relative tolerance
            assert prod.reason == "zero_pivot"

    @given(st.lists(coef, min_size=2, max_size=8).filter(lambda c: abs(c[-1]) > 0.1))
    def test_matches_roots(self, c):
        p = Polynomial(c)
        roots = np.roots(list(reversed(p.coeffs)))
        if np.min(np.abs(roots.real)) < 1e-4:
            return  # marginal cases are tolerance-dependent
        assert is_hurwitz(p).stable == bool(np.all(roots.real < 0))


class TestCauchy:
    def test_values(self):
        assert cauchy_root_bound(Polynomial([1, 1])) == 2
        assert cauchy_root_bound(Polynomial([4, 0, 1])) == 5
        assert cauchy_root_bound(Polynomial([1, 3, 3, 1])) == 4

    def test_constant_raises(self):
        with pytest.raises(DomainError):
            cauchy_root_bound(Polynomial([2]))

    @given(st.lists(coef, min_size=2, max_size=8).filter(lambda c: abs(c[-1]) > 0.01))
    def test_no_roots_on_circle(self, c):
        p = Polynomial(c)
        R = cauchy_root_bound(p)
        for k in range(64):
            assert abs(eval_complex(p, R * cmath.exp(2j * math.pi * k / 64))) > 0
        assert np.all(np.abs(np.roots(list(reversed(p.coeffs)))) < R * (1 + 1e-9))


def test_from_roots_real_coefficients():
    p = from_roots([-1, complex(-1, 2), complex(-1, -2)])
    assert all(isinstance(c, float) for c in p.coeffs)
    assert p.coeffs == pytest.approx((5.0, 7.0, 3.0, 1.0))
