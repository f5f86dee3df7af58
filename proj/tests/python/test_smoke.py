import json
import math
import os

import numpy as np
import pytest

import focklab


def test_identity_symbol():
    T = focklab.assemble("lebesgue", n=1, D=12)
    assert T.shape == (13, 13)
    assert np.max(np.abs(T - np.eye(13))) < 1e-10


def test_basis_order():
    idx = focklab.basis_indices(2, 2)
    assert idx == [[0, 0], [0, 1], [1, 0], [0, 2], [1, 1], [2, 0]]


def test_berezin_of_dirac():
    z = np.array([0.1 + 0.7j])
    val = focklab.berezin("dirac(0.5 - 0.5i)", z)
    assert abs(val - math.exp(-abs(0.1 + 0.7j - (0.5 - 0.5j)) ** 2) / math.pi) < 1e-14


def test_gamma_and_diagonalization():
    g = focklab.gamma("dirac(0)", [0.0, 1.0])
    assert abs(g[0] - math.sqrt(2 / math.pi)) < 1e-14
    assert abs(g[1] - math.sqrt(2 / math.pi) * math.exp(-1.0)) < 1e-14
    assert focklab.diagonalization_residual("dirac(0)", D=10) < 1e-10


def test_carleson_and_rotation():
    assert abs(focklab.carleson_constant("lebesgue") - math.pi) < 1e-12
    X = focklab.rotation_to_vertical(np.array([[1.0], [1.0]]))
    assert abs(X[0, 0] - (1 + 1j) / math.sqrt(2)) < 1e-14


def test_weyl_unitary_on_interior():
    W = focklab.weyl_matrix(np.array([0.2 + 0.1j]), D=30)
    block = (W.conj().T @ W)[:10, :10]
    assert np.max(np.abs(block - np.eye(10))) < 1e-10


def test_run(tmp_path):
    code, summary = focklab.run(
        "command = verify-diagonalization\nD = 10\nmeasure = horizontal(dirac(0))\n", str(tmp_path)
    )
    assert code == 0
    data = json.loads(summary)
    assert data["checks"][0]["pass"]
    assert (tmp_path / "gamma.csv").exists()


def test_config_error():
    with pytest.raises(ValueError):
        focklab.run("command = assemble\nmeasure = nope\n", "/tmp/focklab_py_bad")
