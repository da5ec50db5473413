import json

import pytest

from robustpm.errors import MalformedInputError
from robustpm.kharitonov import is_degenerate
from robustpm.polymatrix import PolynomialMatrix
from robustpm.problem import (
    EpsCoefficient,
    dump_problem,
    from_matrices,
    load_fixture,
    parse_problem,
    problem_from_dict,
)

MINIMAL = {
    "schema": 1,
    "B": [[[[1, 2]]]],
    "D": [[[1, [0.5, 1.5]]]],
}


class TestFixture:
    def test_manipulator_shape(self):
        spec = load_fixture("manipulator")
        assert spec.n == 2
        eps_coeffs = sum(isinstance(c, EpsCoefficient) for r in spec.D for e in r for c in e)
        assert eps_coeffs == 12
        p = spec.instantiate(0.3)
        nondegenerate_b = sum(not is_degenerate(p.B[i, j]).full_point for i in range(2) for j in range(2))
        assert nondegenerate_b == 2
        assert p.C == PolynomialMatrix.identity(2)

    def test_eps_zero_is_point(self):
        p = load_fixture("manipulator").instantiate(0.0)
        assert all(is_degenerate(p.D[i, j]).full_point for i in range(2) for j in range(2))

    def test_d11_bounds(self):
        p = load_fixture("manipulator").instantiate(0.5)
        assert p.D[0, 0].bounds[2] == pytest.approx((6.07 * 0.5, 6.07 * 1.5))
        assert p.D[0, 0].bounds[1] == pytest.approx((6.12 * 0.5, 6.12 * 1.5))
        assert p.D[0, 0].bounds[0] == pytest.approx((5.11 * 0.5, 5.11 * 1.5))

    def test_theta0_variant(self):
        p = load_fixture("manipulator_theta0").instantiate(0.1)
        assert p.B[0, 1].bounds[3] == (2.0, 2.0)
        assert p.B[1, 0].degree == 0 or p.B[1, 0].bounds[-1] == (0.0, 0.0)

    def test_unknown_fixture(self):
        with pytest.raises(MalformedInputError, match="not found"):
            parse_problem("no_such_fixture")


class TestParsing:
    def test_minimal_defaults(self):
        spec = problem_from_dict(MINIMAL)
        assert spec.A == PolynomialMatrix.identity(1) and spec.C == PolynomialMatrix.identity(1)
        p = spec.instantiate()
        assert p.D[0, 0].bounds == ((1.0, 1.0), (0.5, 1.5))

    def test_lo_gt_hi_names_entry(self):
        bad = dict(MINIMAL, B=[[[[0, 1], 1, [3, 2]]]])
        with pytest.raises(MalformedInputError, match=r"B\[1\]\[1\] coefficient s\^2"):
            problem_from_dict(bad)

    def test_schema_required(self):
        with pytest.raises(MalformedInputError, match="schema"):
            problem_from_dict({k: v for k, v in MINIMAL.items() if k != "schema"})

    def test_dimension_mismatch(self):
        with pytest.raises(MalformedInputError, match="D"):
            problem_from_dict(dict(MINIMAL, n=1, D=[[[1], [1]], [[1], [1]]]))

    def test_bad_json_position(self):
        with pytest.raises(MalformedInputError, match="line 2 column"):
            parse_problem('{"schema": 1,\n "B": [}')

    def test_negative_scale(self):
        bad = dict(MINIMAL, D=[[[{"center": 1, "scale": -1}]]])
        with pytest.raises(MalformedInputError, match="negative scale"):
            problem_from_dict(bad)

    def test_non_numeric(self):
        with pytest.raises(MalformedInputError, match="expected a number"):
            problem_from_dict(dict(MINIMAL, B=[[["x"]]]))

    def test_file(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps(MINIMAL))
        assert parse_problem(str(path)).n == 1

    def test_negative_eps(self):
        with pytest.raises(MalformedInputError):
            load_fixture().instantiate(-0.1)


class TestRoundTrip:
    @pytest.mark.parametrize("source", ["manipulator", "manipulator_theta0", json.dumps(MINIMAL)])
    def test_idempotent(self, source):
        once = dump_problem(parse_problem(source))
        twice = dump_problem(parse_problem(once))
        assert once == twice

    def test_template_preserved(self):
        spec = parse_problem(dump_problem(load_fixture()))
        assert spec.instantiate(0.2).D[1, 1].bounds == load_fixture().instantiate(0.2).D[1, 1].bounds


def test_from_matrices():
    p = from_matrices([[1]], [[[[1, 2]]]], [[1]], [[[0, 1]]])
    assert p.B[0, 0].bounds == ((1.0, 2.0),)
    assert p.D[0, 0].bounds == ((0.0, 0.0), (1.0, 1.0))
