#!/usr/bin/env python3
##############################################################################
##                                                                          ##
##          CQ_POLAR - Polar Coding for Classical-Quantum Networks          ##
##                                                                          ##
##              Copyright (C) 2026, The CQ_POLAR Developers                 ##
##                                                                          ##
##  This file is part of CQ_POLAR.                                          ##
##                                                                          ##
##  CQ_POLAR is free software: you can redistribute it and/or modify it     ##
##  under the terms of the GNU General Public License as published by the   ##
##  Free Software Foundation, either version 3 of the License, or (at your  ##
##  option) any later version.                                              ##
##                                                                          ##
##  CQ_POLAR is distributed in the hope that it will be useful,             ##
##  but WITHOUT ANY WARRANTY; without even the implied warranty of          ##
##  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the           ##
##  GNU General Public License for more details.                            ##
##                                                                          ##
##  You should have received a copy of the GNU General Public License       ##
##  along with CQ_POLAR. If not, see <http://www.gnu.org/licenses/>.        ##
##                                                                          ##
##############################################################################


import numpy as np
import numpy.testing as npt
import pytest
import scipy.linalg

from hypothesis import given, settings, strategies as st

from cq_polar import q_core
from cq_polar.q_core import (Density_Matrix, Classical_Quantum_State,
                             von_neumann_entropy, fidelity,
                             holevo_information,
                             conditional_mutual_information,
                             helstrom_projector, partial_trace)
from cq_polar.q_library import pure, random_state, bsc_channel
from cq_polar.errors import Invariant_Error, Dimension_Error
from cq_polar.config import DEFAULT_CONFIG

from classical_oracle import binary_entropy

TOL = DEFAULT_CONFIG.tol_numeric

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)

# randomized instances per numerical identity
hygiene = settings(max_examples=1000)


def ket(*amplitudes):
    return pure(amplitudes)


def brute_entropy(matrix):
    lam = np.linalg.eigvalsh(matrix)
    lam = lam[lam > 1e-14]
    return float(-np.sum(lam * np.log2(lam)))


def brute_sqrt(matrix):
    w, v = np.linalg.eigh(matrix)
    return v @ np.diag(np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def random_pair(seed, dim):
    rng = np.random.default_rng(seed)
    rank0 = int(rng.integers(1, dim + 1))
    rank1 = int(rng.integers(1, dim + 1))
    return random_state(rng, dim, rank0), random_state(rng, dim, rank1)


##############################################################################
# Density matrices
##############################################################################

def test_density_matrix_accepts_diagonal_shorthand():
    rho = Density_Matrix([0.25, 0.75])
    assert rho.dim == 2
    assert rho.diagonal
    npt.assert_allclose(rho.operand(), [0.25, 0.75])


def test_density_matrix_keeps_full_operand_when_off_diagonal():
    rho = Density_Matrix(ket(1, 1))
    assert not rho.diagonal
    assert rho.operand().shape == (2, 2)


def test_density_matrix_rejects_non_hermitian():
    with pytest.raises(Invariant_Error, match="Hermitian"):
        Density_Matrix([[0.5, 0.1], [0.0, 0.5]])


def test_density_matrix_rejects_bad_trace():
    with pytest.raises(Invariant_Error, match="trace"):
        Density_Matrix(np.diag([0.6, 0.3]))


def test_density_matrix_rejects_negative_eigenvalue():
    with pytest.raises(Invariant_Error, match="positive semi-definite"):
        Density_Matrix([[0.5, 0.8], [0.8, 0.5]])


def test_density_matrix_rejects_non_square():
    with pytest.raises(Dimension_Error):
        Density_Matrix(np.ones((2, 3)) / 2)


def test_density_matrix_is_read_only():
    rho = Density_Matrix(np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1


##############################################################################
# Entropy
##############################################################################

def test_entropy_of_pure_state_is_zero():
    assert von_neumann_entropy(ket(1, 0)) == pytest.approx(0, abs=1e-12)
    assert von_neumann_entropy(ket(1, 1j)) == pytest.approx(0, abs=1e-9)


def test_entropy_of_maximally_mixed_qubit_is_one():
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0)


def test_entropy_matches_binary_entropy():
    rho = np.diag([0.9, 0.1])
    u = scipy.linalg.expm(1j * np.array([[0.3, 0.2], [0.2, -0.1]]))
    assert von_neumann_entropy(u @ rho @ u.conj().T) == \
        pytest.approx(binary_entropy(0.1), abs=1e-12)


def test_entropy_of_three_level_mixture():
    assert von_neumann_entropy(np.diag([0.5, 0.25, 0.25])) == \
        pytest.approx(1.5)


@hygiene
@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_entropy_is_additive(seed, d1, d2):
    rng = np.random.default_rng(seed)
    rho = random_state(rng, d1)
    sigma = random_state(rng, d2)
    joint = von_neumann_entropy(np.kron(rho, sigma))
    assert joint == pytest.approx(von_neumann_entropy(rho) +
                                  von_neumann_entropy(sigma), abs=TOL)


@hygiene
@given(seeds, st.integers(1, 16))
def test_entropy_is_within_bounds(seed, dim):
    rho = random_state(np.random.default_rng(seed), dim)
    h = von_neumann_entropy(rho)
    assert -TOL <= h <= np.log2(dim) + TOL
    assert h == pytest.approx(brute_entropy(rho), abs=1e-8)


##############################################################################
# Fidelity
##############################################################################

def test_fidelity_of_identical_states():
    rho = random_state(np.random.default_rng(3), 3)
    assert fidelity(rho, rho) == pytest.approx(1.0, abs=TOL)


def test_fidelity_of_zero_and_plus():
    assert fidelity(ket(1, 0), ket(1, 1)) == pytest.approx(0.5)


def test_fidelity_of_orthogonal_states():
    assert fidelity(ket(1, 0), ket(0, 1)) == pytest.approx(0.0, abs=1e-12)


def test_fidelity_matches_brute_force_oracle():
    rho0, rho1 = random_pair(20260418, 4)
    expected = np.sum(np.linalg.svd(brute_sqrt(rho0) @ brute_sqrt(rho1),
                                    compute_uv=False)) ** 2
    assert fidelity(rho0, rho1) == pytest.approx(expected, abs=1e-9)


def test_fidelity_needs_equal_dimensions():
    with pytest.raises(Dimension_Error):
        fidelity(np.eye(2) / 2, np.eye(3) / 3)


@hygiene
@given(seeds, st.integers(1, 16))
def test_fidelity_is_symmetric_and_bounded(seed, dim):
    rho0, rho1 = random_pair(seed, dim)
    f01 = fidelity(rho0, rho1)
    f10 = fidelity(rho1, rho0)
    assert abs(f01 - f10) <= TOL
    assert -TOL <= f01 <= 1 + TOL
    assert fidelity(rho0, rho0) >= 1 - TOL


@given(seeds, st.integers(1, 16))
def test_diagonal_fast_path_agrees_with_matrices(seed, dim):
    rng = np.random.default_rng(seed)
    p = rng.dirichlet(np.ones(dim))
    q = rng.dirichlet(np.ones(dim))
    assert q_core.fidelity_of(p, q) == \
        pytest.approx(q_core.fidelity_of(np.diag(p).astype(complex),
                                         np.diag(q).astype(complex)),
                      abs=1e-9)
    assert q_core.entropy_of(p) == \
        pytest.approx(q_core.entropy_of(np.diag(p)), abs=1e-9)
    npt.assert_allclose(np.diag(q_core.helstrom_of(p, q)),
                        np.diag(q_core.helstrom_of(np.diag(p),
                                                   np.diag(q))).real,
                        atol=1e-9)


##############################################################################
# Holevo information and conditional mutual information
##############################################################################

def cq_state(states, weights=None):
    if weights is None:
        weights = [1.0 / len(states)] * len(states)
    return Classical_Quantum_State(dict(enumerate(weights)),
                                   dict(enumerate(states)))


def test_holevo_of_identical_outputs():
    rho = random_state(np.random.default_rng(1), 2)
    assert holevo_information(cq_state([rho, rho])) == \
        pytest.approx(0.0, abs=1e-9)


def test_holevo_of_orthogonal_outputs():
    assert holevo_information(cq_state([ket(1, 0), ket(0, 1)])) == \
        pytest.approx(1.0)


def test_holevo_of_bsc_embedding():
    channel = bsc_channel(0.11)
    cq = cq_state([rho.matrix for rho in channel.states])
    assert holevo_information(cq) == \
        pytest.approx(1 - binary_entropy(0.11), abs=1e-12)


def test_cq_state_rejects_bad_weights():
    with pytest.raises(Invariant_Error, match="sum"):
        cq_state([ket(1, 0), ket(0, 1)], [0.5, 0.6])
    with pytest.raises(Invariant_Error, match="negative"):
        cq_state([ket(1, 0), ket(0, 1)], [1.5, -0.5])


def test_cq_state_rejects_mixed_dimensions():
    with pytest.raises(Dimension_Error):
        cq_state([np.eye(2) / 2, np.eye(3) / 3])


def pair_state(states, weights):
    return Classical_Quantum_State(weights, states)


def test_cmi_of_independent_output():
    rho = random_state(np.random.default_rng(5), 3)
    labels = [(x, y) for x in (0, 1) for y in (0, 1)]
    state = pair_state({label: rho for label in labels},
                       {label: 0.25 for label in labels})
    assert conditional_mutual_information(state) == \
        pytest.approx(0.0, abs=1e-9)


def test_cmi_with_trivial_conditioning_is_holevo():
    rng = np.random.default_rng(11)
    rho0 = random_state(rng, 2)
    rho1 = random_state(rng, 2)
    state = pair_state({(0, 0): rho0, (1, 0): rho1},
                       {(0, 0): 0.3, (1, 0): 0.7})
    expected = holevo_information(cq_state([rho0, rho1], [0.3, 0.7]))
    assert conditional_mutual_information(state) == \
        pytest.approx(expected, abs=1e-12)


def test_cmi_matches_block_diagonal_oracle():
    rng = np.random.default_rng(7)
    labels = [(x, y) for x in (0, 1) for y in (0, 1)]
    weights = dict(zip(labels, rng.dirichlet(np.ones(4))))
    states = {label: random_state(rng, 2) for label in labels}

    joint = scipy.linalg.block_diag(*[weights[label] * states[label]
                                      for label in labels])
    w_y = {y: sum(weights[(x, y)] for x in (0, 1)) for y in (0, 1)}
    yb = scipy.linalg.block_diag(*[sum(weights[(x, y)] * states[(x, y)]
                                       for x in (0, 1))
                                   for y in (0, 1)])
    h_xy = brute_entropy(np.diag(list(weights.values())))
    h_y = brute_entropy(np.diag(list(w_y.values())))
    expected = h_xy + brute_entropy(yb) - h_y - brute_entropy(joint)

    assert conditional_mutual_information(pair_state(states, weights)) == \
        pytest.approx(expected, abs=1e-9)


def test_cmi_needs_pair_labels():
    with pytest.raises(Invariant_Error, match="pair"):
        conditional_mutual_information(cq_state([ket(1, 0), ket(0, 1)]))


@hygiene
@given(seeds, st.integers(1, 8))
def test_cmi_is_non_negative_and_bounded(seed, dim):
    rng = np.random.default_rng(seed)
    labels = [(x, y) for x in (0, 1) for y in (0, 1, 2)]
    weights = dict(zip(labels, rng.dirichlet(np.ones(len(labels)))))
    states = {label: random_state(rng, dim,
                                  int(rng.integers(1, dim + 1)))
              for label in labels}
    value = conditional_mutual_information(pair_state(states, weights))
    assert -TOL <= value <= 1 + TOL


##############################################################################
# Helstrom projector
##############################################################################

def test_helstrom_of_orthogonal_states():
    npt.assert_allclose(helstrom_projector(ket(1, 0), ket(0, 1)),
                        np.diag([1, 0]), atol=1e-12)


def test_helstrom_of_identical_states_is_identity():
    rho = random_state(np.random.default_rng(2), 3)
    npt.assert_allclose(helstrom_projector(rho, rho), np.eye(3), atol=1e-9)


@pytest.mark.parametrize("theta", [0.1, 0.4, np.pi / 4, 1.2, np.pi / 2])
def test_helstrom_success_of_pure_states(theta):
    rho0 = ket(1, 0)
    rho1 = ket(np.cos(theta), np.sin(theta))
    projector = helstrom_projector(rho0, rho1)
    success = (np.trace(projector @ rho0).real / 2 +
               np.trace((np.eye(2) - projector) @ rho1).real / 2)
    trace_distance = np.sum(np.abs(np.linalg.eigvalsh(rho0 - rho1)))
    assert success == pytest.approx(0.5 * (1 + trace_distance / 2),
                                    abs=1e-9)
    assert success == pytest.approx(0.5 * (1 + np.sin(theta)), abs=1e-9)


@hygiene
@given(seeds, st.integers(1, 16))
def test_helstrom_projector_is_a_projector(seed, dim):
    rho0, rho1 = random_pair(seed, dim)
    projector = helstrom_projector(rho0, rho1)
    npt.assert_allclose(projector @ projector, projector, atol=TOL)
    npt.assert_allclose(projector, projector.conj().T, atol=TOL)


##############################################################################
# Partial trace and tensor products
##############################################################################

def test_partial_trace_of_product_state():
    rng = np.random.default_rng(4)
    rho_a = random_state(rng, 2)
    rho_b = random_state(rng, 3)
    reduced = partial_trace(np.kron(rho_a, rho_b), [2, 3], [0])
    npt.assert_allclose(reduced.matrix, rho_a, atol=1e-12)
    reduced = partial_trace(np.kron(rho_a, rho_b), [2, 3], [1])
    npt.assert_allclose(reduced.matrix, rho_b, atol=1e-12)


def test_partial_trace_of_bell_state():
    bell = ket(1, 0, 0, 1)
    for keep in ([0], [1]):
        npt.assert_allclose(partial_trace(bell, [2, 2], keep).matrix,
                            np.eye(2) / 2, atol=1e-12)


def test_partial_trace_matches_index_contraction():
    rho = random_state(np.random.default_rng(9), 4)
    expected = np.zeros((2, 2), dtype=complex)
    for j in range(2):
        for m in range(2):
            expected[j, m] = sum(rho[2 * i + j, 2 * i + m] for i in range(2))
    npt.assert_allclose(partial_trace(rho, [2, 2], [1]).matrix, expected,
                        atol=1e-12)


def test_partial_trace_keeps_everything():
    rho = random_state(np.random.default_rng(10), 4)
    npt.assert_allclose(partial_trace(rho, [2, 2], [0, 1]).matrix, rho,
                        atol=1e-12)


@pytest.mark.parametrize("dims, keep", [([2, 3], [0]),
                                        ([2, 2], []),
                                        ([2, 2], [2]),
                                        ([], [0])])
def test_partial_trace_rejects_bad_factors(dims, keep):
    with pytest.raises(Dimension_Error):
        partial_trace(np.eye(4) / 4, dims, keep)


def test_tensor_stays_a_vector_for_diagonal_operands():
    rv = q_core.tensor(np.array([0.5, 0.5]), np.array([1.0, 0.0]))
    assert rv.ndim == 1
    npt.assert_allclose(rv, [0.5, 0, 0.5, 0])
    mixed = q_core.tensor(np.array([1.0, 0.0]), ket(1, 1))
    npt.assert_allclose(mixed, np.kron(np.diag([1, 0]), ket(1, 1)))
