import os
import random
import subprocess
import sys

import numpy as np
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from sympy.polys.matrices import DomainMatrix

from rsss import kernels, linalg

from conftest import F3, F5, Q, Z


def rand_matrix(rng, m, n, lo=-3, hi=3, density=0.5):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(n)] for _ in range(m)]


def csr(M):
    indptr, idx, data = [0], [], []
    for row in M:
        for j, x in enumerate(row):
            if x:
                idx.append(j)
                data.append(x)
        indptr.append(len(idx))
    return np.array(indptr, dtype=np.int64), np.array(idx, dtype=np.int64), np.array(data, dtype=np.int64)


@pytest.mark.parametrize("seed", range(40))
def test_rank_against_sympy(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 9), rng.randint(1, 9)
    M = rand_matrix(rng, m, n)
    want_q = _rank_q(M)
    assert linalg.matrix_rank(M, Q) == want_q
    for backend in ("python",) + (("compiled",) if kernels.BACKEND == "compiled" else ()):
        assert kernels.rank_rational(*csr(M), n, backend=backend) == want_q
        want_p = _rank_mod(M, 3)
        assert kernels.rank_mod_p(*csr(M), n, 3, backend=backend) == want_p
        assert linalg.matrix_rank([[x % 3 for x in r] for r in M], F3) == want_p


def _rank_mod(M, p):
    dom = sympy.GF(p)
    return DomainMatrix([[dom(x) for x in row] for row in M], (len(M), len(M[0])), dom).rank()


def _rank_q(M):
    return DomainMatrix([[sympy.QQ(x) for x in row] for row in M], (len(M), len(M[0])), sympy.QQ).rank()


@pytest.mark.parametrize("seed", range(30))
def test_smith_against_sympy(seed):
    rng = random.Random(100 + seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    M = rand_matrix(rng, m, n, -6, 6)
    snf = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    want = [abs(snf[i, i]) for i in range(min(m, n)) if snf[i, i] != 0]
    assert linalg.smith_diagonal(M, Z) == want


def test_kernel_is_left_kernel():
    rng = random.Random(5)
    for _ in range(20):
        M = rand_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        ker = linalg.kernel(M, Q)
        assert len(ker) == len(M) - _rank_q(M)
        for x in ker:
            assert all(sum(x[i] * M[i][j] for i in range(len(M))) == 0 for j in range(len(M[0])))


def test_quotient_invariants_torsion():
    # span{(2,0),(0,6)} inside Z^2 -> Z/2 + Z/6
    rank, tor = linalg.quotient_invariants([[2, 0], [0, 6]], [[1, 0], [0, 1]], Z)
    assert (rank, tor) == (0, [2, 6])
    rank, tor = linalg.quotient_invariants([[3, 0]], [[1, 0], [0, 1]], F5)
    assert (rank, tor) == (1, [])


def test_composite_modulus_rejected():
    from rsss.coefficients import CoeffRing, RingError
    with pytest.raises(RingError):
        linalg.echelon([[2, 3]], CoeffRing.mod(6))


def test_compiled_overflow_falls_back():
    if kernels.BACKEND != "compiled":
        pytest.skip("compiled kernels not built")
    rng = random.Random(3)
    M = rand_matrix(rng, 60, 60, -9, 9, 0.8)
    want = _rank_q(M)
    assert kernels.rank_rational(*csr(M), 60) == want


def test_pure_python_switch():
    env = dict(os.environ, RSSS_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import rsss; print(rsss.BACKEND)"], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
