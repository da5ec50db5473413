import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from robustpm.errors import MalformedInputError
from robustpm.kharitonov import (
    EDGE_PAIRS,
    VERTEX_PATTERNS,
    IntervalPolynomial,
    distinct_edge_indices,
    distinct_vertex_indices,
    is_degenerate,
    kharitonov_edges,
    kharitonov_vertices,
    sample,
)
from robustpm.poly import Polynomial


@st.composite
def intervals(draw, max_len=7, allow_points=True):
    n = draw(st.integers(1, max_len))
    out = []
    for _ in range(n):
        lo = draw(st.floats(-5, 5))
        w = 0.0 if allow_points and draw(st.booleans()) and draw(st.booleans()) else draw(st.floats(0, 3))
        out.append((lo, lo + w))
    if out[-1] == (0.0, 0.0):
        out[-1] = (1.0, 1.0)
    return IntervalPolynomial(out)


EXAMPLE = IntervalPolynomial([[1, 2], [3, 4], [5, 6]])


class TestConstruction:
    def test_rejects_inverted(self):
        with pytest.raises(MalformedInputError, match="coefficient 1"):
            IntervalPolynomial([[0, 1], [2, 1]])

    def test_rejects_non_finite(self):
        with pytest.raises(MalformedInputError):
            IntervalPolynomial([[0, float("inf")]])

    def test_rejects_empty(self):
        with pytest.raises(MalformedInputError):
            IntervalPolynomial([])

    def test_invariant_degree(self):
        assert EXAMPLE.invariant_degree
        assert not IntervalPolynomial([[1, 1], [-1, 1]]).invariant_degree
        assert IntervalPolynomial([[1, 1], [0.5, 0.5]]).invariant_degree

    def test_json(self):
        assert EXAMPLE.to_json() == [[1, 2], [3, 4], [5, 6]]


class TestVertices:
    def test_worked_example(self):
        k1, k2, k3, k4 = kharitonov_vertices(EXAMPLE)
        assert k1.coeffs == (1, 3, 6)
        assert k2.coeffs == (1, 4, 6)
        assert k3.coeffs == (2, 3, 5)
        assert k4.coeffs == (2, 4, 5)

    def test_point(self):
        vs = kharitonov_vertices(IntervalPolynomial([[1, 1], [1, 1]]))
        assert all(v.coeffs == (1, 1) for v in vs)

    def test_constant_only(self):
        vs = kharitonov_vertices(IntervalPolynomial([[0, 1]]))
        assert [v.coeffs[0] for v in vs] == [0, 0, 1, 1]

    @given(intervals())
    def test_pattern_table(self, ip):
        for v, pattern in zip(kharitonov_vertices(ip), VERTEX_PATTERNS):
            for k, (lo, hi) in enumerate(ip.bounds):
                c = v.coeffs[k] if k < len(v.coeffs) else 0.0
                assert c == (lo if pattern[k % 4] == "L" else hi)

    @given(intervals())
    def test_pairwise_agreement(self, ip):
        k1, k2, k3, _ = (list(v.coeffs) + [0.0] * 8 for v in kharitonov_vertices(ip))
        for k in range(len(ip.bounds)):
            if k % 4 in (0, 2):
                assert k1[k] == k2[k]
            else:
                assert k1[k] == k3[k]

    @given(intervals())
    def test_full_point_single_vertex(self, ip):
        point = IntervalPolynomial([(lo, lo) for lo, _ in ip.bounds])
        assert len({v.coeffs for v in kharitonov_vertices(point)}) == 1
        assert distinct_vertex_indices(point) == (1,)
        assert distinct_edge_indices(point) == ()


class TestEdges:
    def test_pairs(self):
        assert [e.pair for e in kharitonov_edges(EXAMPLE)] == list(EDGE_PAIRS)

    def test_first_edge(self):
        e = kharitonov_edges(EXAMPLE)[0]
        assert e.start.coeffs == (1, 3, 6) and e.end.coeffs == (1, 4, 6)
        assert e.at(0.5).coeffs == (1, 3.5, 6)
        assert e.at(1.0) == e.start and e.at(0.0) == e.end

    def test_point_edges_degenerate(self):
        assert all(e.degenerate for e in kharitonov_edges(IntervalPolynomial([[2, 2], [1, 1]])))

    @given(intervals())
    def test_edges_inside_box(self, ip):
        for e in kharitonov_edges(ip):
            for lam in np.linspace(0, 1, 11):
                assert ip.contains(e.at(float(lam)), slack=1e-12)

    @given(intervals())
    def test_every_vertex_on_two_edges(self, ip):
        hits = [0] * 4
        for i, j in EDGE_PAIRS:
            hits[i - 1] += 1
            hits[j - 1] += 1
        assert hits == [2, 2, 2, 2]

    def test_distinct_edges_one_uncertain(self):
        ip = IntervalPolynomial([[1, 1], [0, 1], [1, 1]])
        # only the s coefficient varies: two distinct vertices, one distinct segment
        assert len(distinct_vertex_indices(ip)) == 2
        assert len(distinct_edge_indices(ip)) == 1


class TestDegeneracy:
    def test_full_point(self):
        assert is_degenerate(IntervalPolynomial([[1, 1], [2, 2]])).full_point

    def test_flags(self):
        d = is_degenerate(IntervalPolynomial([[1, 2], [2, 2]]))
        assert not d.full_point and d.flags == (False, True)

    def test_example_entry(self):
        assert not is_degenerate(IntervalPolynomial([[0, 0], [0, 0], [0, 0], [1, 2]])).full_point


class TestSample:
    def test_point(self):
        ip = IntervalPolynomial([[1, 1], [2, 2]])
        assert sample(ip, np.random.default_rng(0)) == Polynomial([1, 2])

    @given(intervals(), st.integers(0, 2**32 - 1))
    def test_inside(self, ip, seed):
        assert ip.contains(sample(ip, np.random.default_rng(seed)))

    def test_seeded(self):
        a = [sample(EXAMPLE, np.random.default_rng(5)) for _ in range(2)]
        assert a[0] == a[1]
