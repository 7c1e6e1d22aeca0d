"""The compiled and pure-Python kernels must agree bit for bit."""
import random

import pytest
import sympy

from tpkit import kernels

py = kernels.backend("python")
try:
    cy = kernels.backend("cython")
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def _random_matrix(rng, n, big=False):
    hi = 10**30 if big else 9
    return [[rng.randint(-hi, hi) for _ in range(n)] for _ in range(n)]


def test_bareiss_against_sympy():
    rng = random.Random(7)
    for _ in range(60):
        m = _random_matrix(rng, rng.randint(1, 6))
        assert kernels.bareiss_det(m) == sympy.Matrix(m).det()


def test_bareiss_singular_and_pivoting():
    assert kernels.bareiss_det([[0, 1], [1, 0]]) == -1
    assert kernels.bareiss_det([[1, 2], [2, 4]]) == 0
    assert kernels.bareiss_det([[0, 0], [0, 1]]) == 0


@needs_ext
@pytest.mark.parametrize("big", [False, True])
def test_bareiss_backends_agree(big):
    rng = random.Random(11 + big)
    for _ in range(150):
        m = _random_matrix(rng, rng.randint(1, 7), big)
        assert cy.bareiss_det([r[:] for r in m]) == py.bareiss_det([r[:] for r in m])


@needs_ext
def test_bareiss_int64_overflow_falls_back():
    m = [[2**40, 3], [5, 2**40]]
    assert cy.bareiss_det(m) == 2**80 - 15


@needs_ext
@pytest.mark.parametrize(
    "coeffs,order,window",
    [
        ([1] * 9, 4, 8),
        ([1, 1, 2, 0, 0], 2, 4),
        ([24, 24, 12, 4, 1, 0, 0, 0], 4, 7),
        ([10**30, 3 * 10**29, 10**28, 7, 1, 5], 3, 5),
        ([6, 11, 6, 1, 0, 0, 0], 5, 6),
    ],
)
@pytest.mark.parametrize("stop_first", [True, False])
def test_scan_backends_agree(coeffs, order, window, stop_first):
    assert cy.scan_toeplitz(coeffs, order, window, stop_first) == py.scan_toeplitz(coeffs, order, window, stop_first)


@needs_ext
def test_sturm_backends_agree():
    rng = random.Random(3)
    for _ in range(40):
        p = [rng.randint(-50, 50) for _ in range(rng.randint(2, 12))]
        if p[-1] == 0:
            p[-1] = 1
        assert cy.sturm_chain(p) == py.sturm_chain(p)


def test_kernel_selection_reports_backend():
    assert kernels.IMPLEMENTATION in ("cython", "python")
    with pytest.raises(ValueError):
        kernels.backend("fortran")
