"""Seeded random problem generators shared by the test modules."""

import numpy as np

from robustpm.kharitonov import IntervalPolynomial
from robustpm.oracle import nominal_stable
from robustpm.poly import from_roots
from robustpm.polymatrix import IntervalPolynomialMatrix, PolynomialMatrix
from robustpm.problem import Problem


def stable_poly(rng, degree, lead=1.0, min_decay=0.2):
    """Real polynomial with roots drawn from the open left half plane."""
    roots = []
    while len(roots) < degree:
        if degree - len(roots) >= 2 and rng.random() < 0.5:
            re, im = -rng.uniform(min_decay, 2.0), rng.uniform(0.1, 2.0)
            roots += [complex(re, im), complex(re, -im)]
        else:
            roots.append(-rng.uniform(min_decay, 2.0))
    return from_roots(roots).scale(lead)


def scalar_interval(rng, max_degree=5, max_width=0.3):
    """Interval polynomial around a stable center; the leading coefficient stays a point."""
    deg = int(rng.integers(1, max_degree + 1))
    # slow roots put a fair share of boxes across the stability boundary
    center = stable_poly(rng, deg, min_decay=0.02)
    bounds = []
    for k, c in enumerate(center.coeffs):
        w = 0.0 if k == deg else rng.uniform(0.0, max_width)
        bounds.append((c - w / 2, c + w / 2))
    return IntervalPolynomial(bounds)


def scalar_problem(ip):
    """``M = B * 1 + 0 * 1`` so the family is exactly the interval polynomial."""
    one = PolynomialMatrix([[[1.0]]])
    return Problem(one, IntervalPolynomialMatrix([[ip]]), one,
                   IntervalPolynomialMatrix([[IntervalPolynomial([(0.0, 0.0)])]]), "scalar")


def _entry(rng, nominal, uncertain, max_width):
    bounds = [(c, c) for c in nominal]
    slots = [k for k in range(len(nominal)) if k != len(nominal) - 1 or len(nominal) == 1]
    for k in rng.choice(slots, size=min(uncertain, len(slots)), replace=False):
        w = rng.uniform(0.05, max_width)
        bounds[k] = (nominal[k] - w / 2, nominal[k] + w / 2)
    return IntervalPolynomial(bounds)


def matrix_problem(rng, max_width=0.4, max_tries=1000):
    """n=2 problem with entry degree <= 2 and a stable nominal determinant.

    ``D`` has point leading diagonal coefficients and lower-degree off-diagonal
    entries, ``A`` and ``C`` are constant, so the determinant degree is fixed
    over the whole box. Each uncertain entry gets one or two interval
    coefficients; one or two entries of each of ``B`` and ``D`` are left as points.
    """
    for _ in range(max_tries):
        A = rng.uniform(-1.5, 1.5, (2, 2)) + np.eye(2) * 1.5
        C = rng.uniform(-0.5, 0.5, (2, 2)) + np.eye(2)
        if abs(np.linalg.det(C)) < 0.3:
            continue
        D0 = [[list(stable_poly(rng, 2).coeffs), list(rng.uniform(-1, 1, 2))],
              [list(rng.uniform(-1, 1, 2)), list(stable_poly(rng, 2).coeffs)]]
        B0 = [[list(rng.uniform(-1, 1, 2)) for _ in range(2)] for _ in range(2)]
        points = {("B", int(rng.integers(4))), ("D", int(rng.integers(4)))}

        def box(side, nominal):
            rows = []
            for i in range(2):
                row = []
                for j in range(2):
                    if (side, 2 * i + j) in points:
                        row.append(IntervalPolynomial([(c, c) for c in nominal[i][j]]))
                    else:
                        row.append(_entry(rng, nominal[i][j], int(rng.integers(1, 3)), max_width))
                rows.append(row)
            return IntervalPolynomialMatrix(rows)

        prob = Problem(PolynomialMatrix([[[a] for a in r] for r in A]), box("B", B0),
                       PolynomialMatrix([[[c] for c in r] for r in C]), box("D", D0), "random")
        if nominal_stable(prob):
            return prob
    raise RuntimeError("no stable nominal found")


__all__ = ["stable_poly", "scalar_interval", "scalar_problem", "matrix_problem"]
