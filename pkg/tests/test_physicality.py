import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from gptparticles.basis import enumerate_basis, square_matrix
from gptparticles.errors import DomainError, InfeasibleParametersError, StructuralError
from gptparticles.physicality import (
    characterize_2x2,
    check_all,
    check_double_stochastic,
    check_evolution,
    check_no_interaction,
    family_matrix,
    infer_single_particle,
    multinomial_column,
    single_family_matrix,
    three_param_matrix,
)

T_IMP = square_matrix(2, 2, [[0.5, 0, 0.5], [0, 1, 0], [0.5, 0, 0.5]])
BS1 = square_matrix(1, 2, [[0.5, 0.5], [0.5, 0.5]])
BETAS = np.linspace(0, 1, 101)


def test_double_stochastic_examples():
    assert check_double_stochastic(family_matrix(0.5))
    assert check_double_stochastic(T_IMP)
    a = [[0.5, 0.4, 0.3], [0.2, 0.3, 0.3], [0.3, 0.3, 0.4]]
    v = check_double_stochastic(square_matrix(2, 2, a))
    assert not v and v.residual == pytest.approx(0.2)


def test_double_stochastic_needs_square():
    from gptparticles.removal import removal_matrix

    with pytest.raises(StructuralError):
        check_double_stochastic(removal_matrix(2, 2))


def test_no_interaction_impossible_process():
    assert check_no_interaction(T_IMP, BS1)


@pytest.mark.parametrize("beta", [0, 0.3, 1])
def test_no_interaction_family(beta):
    assert check_no_interaction(family_matrix(beta), single_family_matrix(beta))


def test_no_interaction_impossible_vs_identity():
    v = check_no_interaction(T_IMP, square_matrix(1, 2, np.eye(2)))
    assert not v
    # R T_imp maps every column to (1/2, 1/2); identity keeps (1, 0) at the (2,0) column
    assert v.residual == pytest.approx(0.5)
    w = {x.input_state: x for x in v.witnesses}
    assert w[(2, 0)].observed == pytest.approx((0.5, 0.5))
    assert w[(2, 0)].expected == pytest.approx((1.0, 0.0))
    assert (1, 1) not in w


def test_no_interaction_basis_mismatch():
    with pytest.raises(StructuralError):
        check_no_interaction(T_IMP, square_matrix(1, 3, np.eye(3)))
    with pytest.raises(StructuralError):
        check_no_interaction(BS1, T_IMP)


def test_evolution_impossible_process_witness():
    v = check_evolution(T_IMP, BS1)
    assert not v
    w = next(x for x in v.witnesses if x.input_state == (2, 0))
    assert w.observed[0] == 0.5
    assert w.expected[0] == 0.25
    # witnesses are re-checkable
    assert w.residual == pytest.approx(np.max(np.abs(T_IMP.column((2, 0)) - np.array(w.expected))))


@pytest.mark.parametrize("beta", BETAS[::10])
def test_evolution_family(beta):
    assert check_evolution(family_matrix(beta), single_family_matrix(beta))


def test_evolution_identity():
    assert check_evolution(square_matrix(2, 2, np.eye(3)), square_matrix(1, 2, np.eye(2)))


def test_multinomial_column_three_particles():
    # three draws with probabilities (0.2, 0.3, 0.5): P(1,1,1) = 3! * .2 * .3 * .5
    b = enumerate_basis(3, 3)
    col = multinomial_column([0.2, 0.3, 0.5], b)
    assert col[b.index((1, 1, 1))] == pytest.approx(6 * 0.2 * 0.3 * 0.5)
    assert col[b.index((0, 0, 3))] == pytest.approx(0.125)
    assert col.sum() == pytest.approx(1.0)


def test_single_family():
    assert np.array_equal(single_family_matrix(0.5).entries, BS1.entries)
    assert np.array_equal(single_family_matrix(1).entries, np.eye(2))
    assert np.array_equal(single_family_matrix(0).entries, [[0, 1], [1, 0]])
    with pytest.raises(DomainError):
        single_family_matrix(1.2)


def test_family_examples():
    assert np.array_equal(
        family_matrix(0.5).entries, [[0.25, 0.5, 0.25], [0.5, 0, 0.5], [0.25, 0.5, 0.25]]
    )
    assert np.array_equal(family_matrix(1).entries, np.eye(3))
    assert np.array_equal(family_matrix(0).entries, np.eye(3)[::-1])
    with pytest.raises(DomainError):
        family_matrix(-0.1)


@pytest.mark.parametrize("beta", BETAS[::7])
def test_three_param_reduces_to_family(beta):
    T = three_param_matrix(beta**2, 2 * beta * (1 - beta), beta)
    assert T.allclose(family_matrix(beta), 1e-15)


def test_three_param_examples():
    assert np.array_equal(three_param_matrix(0.5, 0, 0.5).entries, T_IMP.entries)
    assert np.array_equal(three_param_matrix(1, 0, 1).entries, np.eye(3))
    with pytest.raises(InfeasibleParametersError, match=r"entry \(1, 0\)"):
        three_param_matrix(0.1, 0.2, 0.9)


def feasible_params(seed, on_curve=False):
    """Rejection-sample (alpha1, alpha2, beta) with every three-parameter entry in [0, 1]."""
    rng = np.random.default_rng(seed)
    while True:
        beta = rng.random()
        if on_curve:
            return beta**2, 2 * beta * (1 - beta), beta
        a1, a2 = rng.random(), rng.random() / 2
        try:
            three_param_matrix(a1, a2, beta)
        except InfeasibleParametersError:
            continue
        return a1, a2, beta


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_three_param_always_no_interacting(seed, on_curve):
    a1, a2, beta = feasible_params(seed, on_curve)
    T = three_param_matrix(a1, a2, beta)
    assert check_double_stochastic(T)
    assert check_no_interaction(T, single_family_matrix(beta))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_evolution_cuts_the_three_param_family(seed, on_curve):
    a1, a2, beta = feasible_params(seed, on_curve)
    T = three_param_matrix(a1, a2, beta)
    near_curve = abs(a1 - beta**2) < 1e-9 and abs(a2 - 2 * beta * (1 - beta)) < 1e-9
    assert bool(check_evolution(T, single_family_matrix(beta))) == near_curve


def test_characterize_quarter():
    rep = characterize_2x2(family_matrix(0.25))
    assert rep.all_pass and rep.realizable
    assert rep.inferred_beta == pytest.approx(0.0625 + 0.1875, abs=1e-15)
    # cos^2 theta = beta
    assert rep.realizing_theta == pytest.approx(np.pi / 3)


def test_characterize_half():
    rep = characterize_2x2(family_matrix(0.5))
    assert rep.realizable and rep.realizing_theta == pytest.approx(np.pi / 4)


def test_characterize_impossible():
    rep = characterize_2x2(T_IMP)
    assert rep.doubly_stochastic and rep.no_interaction and not rep.evolution
    assert rep.inferred_beta == pytest.approx(0.5, abs=1e-12)
    assert rep.realizable is False and rep.realizing_theta is None
    d = rep.to_dict()
    assert d["realizable"] is False and d["beta"] == 0.5
    assert {tuple(w["input_state"]) for w in d["witnesses"]} == {(2, 0), (0, 2)}


def test_characterize_beta_out_of_range():
    # alpha1 + alpha3 / 2 = 0.9 + 0.5 = 1.4
    T = square_matrix(2, 2, [[0.9, 0.0, 0.1], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    rep = characterize_2x2(T)
    assert rep.inferred_beta is None and not rep.no_interaction and not rep.realizable


def test_characterize_needs_2x2():
    with pytest.raises(StructuralError):
        characterize_2x2(square_matrix(1, 2, np.eye(2)))


@pytest.mark.parametrize("beta", BETAS)
def test_round_trip(beta):
    rep = characterize_2x2(family_matrix(beta), 1e-9)
    assert rep.realizable
    assert abs(rep.inferred_beta - beta) < 1e-9


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_realizability_dichotomy(seed):
    rng = np.random.default_rng(seed)
    # random doubly stochastic matrix: convex mix of permutation matrices
    perms = [np.eye(3)[list(p)] for p in __import__("itertools").permutations(range(3))]
    w = rng.dirichlet(np.ones(6) * 0.3)
    T = square_matrix(2, 2, sum(wi * P for wi, P in zip(w, perms)))
    rep = characterize_2x2(T)
    in_family = any(T.allclose(family_matrix(b), 1e-9) for b in np.linspace(0, 1, 2001)) or (
        rep.inferred_beta is not None and T.allclose(family_matrix(rep.inferred_beta), 1e-9)
    )
    assert rep.realizable == in_family


def test_infer_single_particle_two_two():
    T1 = infer_single_particle(family_matrix(0.3))
    assert T1.allclose(single_family_matrix(0.3), 1e-14)


def test_check_all_general_quantum():
    from gptparticles.quantum import boson_transition_matrix, realize

    T3 = boson_transition_matrix(realize(0.3), 3)
    rep = check_all(T3)
    assert rep.all_pass and rep.realizable
    assert rep.inferred_beta == pytest.approx(0.3)


def test_check_all_three_modes_undecided(rng):
    from gptparticles.quantum import boson_transition_matrix, random_unitary

    rep = check_all(boson_transition_matrix(random_unitary(3, rng), 2))
    assert rep.all_pass and rep.realizable is None


def test_check_all_with_supplied_single():
    rep = check_all(T_IMP, BS1)
    assert rep.no_interaction and not rep.evolution and rep.realizable is False
