import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtsolve.mtensor import (
    GeneratorConfig,
    MTensorDecomposition,
    certify_nonsingular_m,
    compose,
    generate_instance,
    max_row_sum,
    tau0,
)
from mtsolve.tensor import DenseTensor, apply, identity_tensor, partial_symmetrize

configs = st.builds(
    GeneratorConfig,
    m=st.integers(2, 5),
    n=st.integers(1, 5),
    epsilon=st.floats(1e-3, 1.0),
    seed=st.integers(0, 2**32 - 1),
)


def test_compose_scaled_identity():
    A = compose(MTensorDecomposition(2.0, DenseTensor(3, 2, np.zeros(8))))
    assert A == identity_tensor(3, 2).scaled(2.0)


def test_compose_negative_identity():
    A = compose(MTensorDecomposition(0.0, identity_tensor(3, 2)))
    assert A == identity_tensor(3, 2).scaled(-1.0)


def test_compose_diagonal(rng):
    B = DenseTensor(3, 3, rng.random(27))
    A = compose(MTensorDecomposition(5.0, B))
    for i in range(3):
        assert A.full()[i, i, i] == 5.0 - B.full()[i, i, i]


def test_decomposition_rejects_negative_b():
    with pytest.raises(ValueError):
        MTensorDecomposition(1.0, identity_tensor(3, 2).scaled(-1.0))


def test_max_row_sum():
    assert max_row_sum(DenseTensor(3, 2, np.ones(8))) == 4.0
    assert max_row_sum(identity_tensor(3, 2)) == 1.0
    with pytest.raises(ValueError):
        max_row_sum(identity_tensor(3, 2).scaled(-1.0))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_max_row_sum_is_apply_with_ones(m, n, seed):
    B = DenseTensor(m, n, np.random.default_rng(seed).random(n**m))
    assert max_row_sum(B) == pytest.approx(apply(B, np.ones(n)).max(), rel=1e-15)


def test_certify_basic():
    ones = np.ones(2)
    assert certify_nonsingular_m(identity_tensor(3, 2), ones)
    assert not certify_nonsingular_m(identity_tensor(3, 2).scaled(-1.0), ones)
    with pytest.raises(ValueError):
        certify_nonsingular_m(identity_tensor(3, 2), [1.0, 0.0])


def test_certify_rejects_positive_off_diagonal():
    full = identity_tensor(3, 2).full().copy() * 10
    full[0, 0, 1] = 0.5
    assert not certify_nonsingular_m(DenseTensor.from_array(full), np.ones(2))


def test_tau0_branches():
    assert tau0(2.0, 1.5) == pytest.approx(1 / 3, abs=1e-15)
    assert tau0(3.0, 1.0) == 1.0
    assert tau0(1.5, 1.0) == pytest.approx(1 / 3, abs=1e-15)


@pytest.mark.parametrize("s,rho", [(1.0, 1.0), (0.5, 1.0), (1.0, -0.5)])
def test_tau0_invalid(s, rho):
    with pytest.raises(ValueError):
        tau0(s, rho)


@given(st.floats(0, 1e6), st.floats(1e-9, 1e6))
def test_tau0_positive(rho, gap):
    s = rho + gap
    if s > rho:
        assert tau0(s, rho) > 0


def test_tau0_keeps_homotopy_tensor_m(rng):
    # (s t + 1 - t) / t must stay above rho on [1, 1 + tau0)
    for _ in range(100):
        rho = rng.uniform(0, 5)
        s = rho + rng.uniform(1e-3, 5)
        t = 1 + tau0(s, rho) * rng.uniform(0, 1)
        assert (s * t + 1 - t) / t > rho


def test_generator_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(3, 4, epsilon=0.0)
    with pytest.raises(ValueError):
        GeneratorConfig(1, 4)


def test_generator_deterministic():
    cfg = GeneratorConfig(3, 5, 0.01, 42)
    A1, b1, _ = generate_instance(cfg)
    A2, b2, _ = generate_instance(cfg)
    assert A1.entries.tobytes() == A2.entries.tobytes()
    assert b1.tobytes() == b2.tobytes()
    A3, _, _ = generate_instance(GeneratorConfig(3, 5, 0.01, 43))
    assert A3 != A1


def test_generator_shift():
    A, b, d = generate_instance(GeneratorConfig(3, 6, 0.01, 7))
    assert d.s == pytest.approx(1.01 * max_row_sum(d.B), rel=1e-15)
    assert np.all((d.B.entries >= 0) & (d.B.entries < 1))
    assert np.all((b > 0) & (b < 1))
    assert A == compose(d)


@settings(max_examples=50, deadline=None)
@given(configs)
def test_generated_instances_certify(cfg):
    A, _, _ = generate_instance(cfg)
    ones = np.ones(cfg.n)
    assert certify_nonsingular_m(A, ones)
    # symmetrizing the trailing indices keeps the certificate
    assert certify_nonsingular_m(partial_symmetrize(A), ones)
