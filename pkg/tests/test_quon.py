import numpy as np
import pytest

from gptparticles.errors import DomainError, UnnormalizableStateError
from gptparticles.physicality import check_double_stochastic, family_matrix
from gptparticles.quon import (
    ALL_INPUTS,
    QuonModel,
    check_quon_evolution,
    quon_no_interaction,
    quon_norm,
    quon_statistics,
    quon_transition_matrix,
    sweep_rows,
)

Q_GRID = [-0.99, -0.5, 0.0, 0.5, 1.0]
R_GRID = np.linspace(0, 1, 11)


@pytest.mark.parametrize("q", [-1, -0.3, 0, 0.4, 1])
def test_norm_two(q):
    assert quon_norm(2, q) == pytest.approx(1 + q)


@pytest.mark.parametrize("n", range(1, 9))
def test_norm_bosonic_limit(n):
    assert quon_norm(n, 1) == n


def test_norm_fermionic_pair_vanishes():
    assert quon_norm(2, -1) == 0
    assert quon_norm(3, -1) == 1
    with pytest.raises(DomainError):
        quon_norm(0, 0.5)


def test_norm_is_geometric_sum():
    q = 0.37
    assert quon_norm(6, q) == pytest.approx(sum(q**m for m in range(6)))


def test_model_validation():
    with pytest.raises(DomainError):
        QuonModel(1.5, 0.5)
    with pytest.raises(DomainError):
        QuonModel(0.5, -0.1)
    assert QuonModel(0.2, 0.3).T == pytest.approx(0.7)


def test_boson_symmetric_bs():
    t = quon_statistics(QuonModel(1, 0.5))
    assert t.prob((1, 1), (1, 1)) == 0
    assert t.prob((1, 1), (2, 0)) == 0.5


@pytest.mark.parametrize("R", R_GRID)
def test_fermion_antibunching(R):
    t = quon_statistics(QuonModel(-1, R))
    assert t.prob((1, 1), (2, 0)) == 0
    assert t.prob((1, 1), (1, 1)) == pytest.approx(1, abs=1e-12)
    assert (2, 0) not in t
    with pytest.raises(UnnormalizableStateError):
        t[(2, 0)]


def test_fermion_same_mode_request_raises():
    with pytest.raises(UnnormalizableStateError):
        quon_statistics(QuonModel(-1, 0.5), inputs=[(2, 0)])
    with pytest.raises(UnnormalizableStateError):
        quon_transition_matrix(QuonModel(-1, 0.5))


def test_boltzmann_midpoint():
    t = quon_statistics(QuonModel(0, 0.5))
    assert t.prob((1, 1), (2, 0)) == 0.25
    assert t.prob((1, 1), (1, 1)) == 0.5


def test_single_quon_rows():
    t = quon_statistics(QuonModel(0.3, 0.2))
    assert t[(1, 0)] == {(1, 0): pytest.approx(0.8), (0, 1): 0.2}
    assert t[(0, 1)] == {(1, 0): 0.2, (0, 1): pytest.approx(0.8)}


def test_matrix_q_half():
    T = quon_transition_matrix(QuonModel(0.5, 0.5))
    assert np.allclose(T.column((1, 1)), [3 / 8, 1 / 4, 3 / 8])


@pytest.mark.parametrize("R", np.linspace(0, 1, 21))
def test_boson_limit_is_family(R):
    T = quon_transition_matrix(QuonModel(1, R))
    assert np.max(np.abs(T.entries - family_matrix(1 - R).entries)) < 1e-12


@pytest.mark.parametrize("q", Q_GRID)
@pytest.mark.parametrize("R", R_GRID)
def test_grid_properties(q, R):
    m = QuonModel(q, R)
    table = quon_statistics(m)
    for s in ALL_INPUTS:
        assert abs(sum(table[s].values()) - 1) < 1e-12
        assert min(table[s].values()) >= 0
    assert check_quon_evolution(m, 1e-12)
    T = quon_transition_matrix(m)
    assert abs(T.entries[0].sum() - (1 + R * (1 - R) * (q - 1))) < 1e-12
    if q < 1 and 0 < R < 1:
        assert not check_double_stochastic(T)


def test_evolution_examples():
    assert check_quon_evolution(QuonModel(0.7, 0.3))
    assert check_quon_evolution(QuonModel(1, 0.5))
    assert check_quon_evolution(QuonModel(0, 0))


@pytest.mark.parametrize("R", [0.1, 0.5, 0.8])
def test_bunching_increases_with_q(R):
    qs = np.linspace(-1, 1, 41)
    p = [quon_statistics(QuonModel(q, R)).prob((1, 1), (2, 0)) for q in qs]
    assert np.all(np.diff(p) > 0)


@pytest.mark.parametrize("R", [0.2, 0.5])
def test_fermion_limit_continuity(R):
    for q in (-0.9, -0.99, -0.999999):
        t = quon_statistics(QuonModel(q, R))
        assert t.prob((1, 1), (1, 1)) == pytest.approx(1, abs=2 * (1 + q))


def test_no_interaction_residual_reported():
    assert quon_no_interaction(QuonModel(1, 0.3))
    v = quon_no_interaction(QuonModel(0, 0.5))
    assert np.isfinite(v.residual)


def test_sweep_rows():
    header, rows = sweep_rows([-1.0, 0.5], [0.0, 0.5])
    assert header[:2] == ["q", "R"] and "P11_20" in header
    assert len(rows) == 4
    fermion = dict(zip(header, rows[1]))
    assert fermion["P20_20"] is None and fermion["P11_11"] == 1
