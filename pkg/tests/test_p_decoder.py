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

from cq_polar import q_core
from cq_polar.mac_chains import nu_path
from cq_polar.p_decoder import (trial_rng, Decoder_State, step_measure,
                                SC_Decoder, Trial_Record, Error_Estimate,
                                decode_block, random_inputs, run_trials,
                                summarise, monte_carlo)
from cq_polar.p_synthesis import (Synthesizer, construct_code,
                                  construct_mac_code)
from cq_polar.p_transform import Coset_Code_Spec, Polar_Code_Spec
from cq_polar.q_library import (noiseless_channel, useless_channel,
                                bsc_channel, pure_state_channel,
                                amplitude_damping_channel, product_mac,
                                adder_mac, random_mac)
from cq_polar.config import Config
from cq_polar.errors import Invariant_Error, Degeneracy_Error

from classical_oracle import SC_Oracle, split_parameters, binomial_z

Z_LIMIT = 3.29


def test_trial_streams_are_independent():
    a = trial_rng(7, (0, 1)).random(4)
    b = trial_rng(7, (0, 1)).random(4)
    c = trial_rng(7, (1, 1)).random(4)
    npt.assert_array_equal(a, b)
    assert not np.allclose(a, c)


##############################################################################
# Single measurements
##############################################################################

def test_step_measure_on_commuting_state():
    state = Decoder_State(np.array([0.25, 0.75]))
    outcome, prob0 = step_measure(state, np.array([1.0, 0.0]),
                                  trial_rng(1))
    assert prob0 == pytest.approx(0.25)
    assert state.position == 1
    expected = [0.25, 0.0] if outcome == 0 else [0.0, 0.75]
    npt.assert_allclose(state.operand, expected)


def test_step_measure_collapses_full_state():
    plus = np.full((2, 2), 0.5, dtype=complex)
    state = Decoder_State(plus)
    outcome, prob0 = step_measure(state, np.diag([1.0, 0.0]),
                                  trial_rng(2))
    assert prob0 == pytest.approx(0.5)
    npt.assert_allclose(state.operand,
                        np.diag([0.5, 0.0] if outcome == 0 else [0.0, 0.5]),
                        atol=1e-12)


def test_step_measure_mixes_vector_state_and_matrix_projector():
    state = Decoder_State(np.array([0.5, 0.5]))
    projector = np.full((2, 2), 0.5, dtype=complex)
    _, prob0 = step_measure(state, projector, trial_rng(3))
    assert prob0 == pytest.approx(0.5)
    assert state.operand.shape == (2, 2)


def test_step_measure_reports_degeneracy():
    with pytest.raises(Degeneracy_Error):
        step_measure(Decoder_State(np.zeros(2)), np.array([1.0, 0.0]),
                     trial_rng(4))


def test_degenerate_records_count_as_errors():
    record = Trial_Record(1, (0, 1), [[0, 1]], [[]], [], degenerate=True)
    assert not record.success
    assert record.to_json()["degenerate"]
    estimate = summarise([record,
                          Trial_Record(1, (1, 1), [[1]], [[1]], [0.5])], 1)
    assert estimate.errors == 1
    assert estimate.degenerate == 1


##############################################################################
# Decoder
##############################################################################

def test_decoder_needs_a_path_for_macs():
    with pytest.raises(Invariant_Error):
        SC_Decoder(adder_mac(2), 2)
    with pytest.raises(Invariant_Error):
        SC_Decoder(adder_mac(2), 2, [0, 0, 0, 1])


def test_frozen_positions_are_not_measured():
    code = Coset_Code_Spec(4, [3], {0: 1, 1: 0, 2: 1})
    channel = bsc_channel(0.1)
    record = decode_block(channel, code, code.assemble([1]), 5, (0, 1))
    assert len(record.probabilities) == 1
    assert record.sent == [[1]]


def test_projector_cache_is_bounded():
    channel = bsc_channel(0.1)
    cfg = Config()
    cfg.set("projector_cache", 2)
    decoder = SC_Decoder(channel, 4, cfg=cfg)
    code = Coset_Code_Spec(4, [0, 1, 2, 3])
    run_trials(channel, code, 3, 0, 10, cfg, decoder=decoder)
    assert len(decoder.projectors) <= 2


@pytest.mark.parametrize("N", [1, 4, 8])
def test_noiseless_channel_never_fails(N):
    code = construct_code(noiseless_channel(), N, N // 2 or 1)
    estimate, records = monte_carlo(noiseless_channel(), code, 50, 11)
    assert estimate.errors == 0
    assert all(p in (0.0, 1.0) for r in records for p in r.probabilities)


def test_useless_channel_guesses():
    # Every projector is the identity: the decoder always answers 0
    code = Coset_Code_Spec(4, [0, 1, 2, 3])
    estimate, records = monte_carlo(useless_channel(), code, 2000, 12)
    assert all(r.decoded == [[0, 0, 0, 0]] for r in records)
    assert abs(binomial_z(estimate.errors, estimate.trials,
                          1 - 2 ** -4)) < Z_LIMIT


def test_monte_carlo_is_deterministic():
    channel = amplitude_damping_channel(0.3)
    code = construct_code(channel, 4, 2)
    first = monte_carlo(channel, code, 30, 99)
    second = monte_carlo(channel, code, 30, 99)
    assert first[1] == second[1]
    assert first[0].to_json() == second[0].to_json()
    assert first[1] != monte_carlo(channel, code, 30, 100)[1]


def test_trials_can_be_split():
    channel = bsc_channel(0.2)
    code = construct_code(channel, 4, 2)
    whole = run_trials(channel, code, 4, 0, 20)
    parts = run_trials(channel, code, 4, 0, 7) + \
        run_trials(channel, code, 4, 7, 13)
    assert whole == parts


@pytest.mark.parametrize("frozen_value", [0, 1])
def test_bsc_matches_classical_block_error(frozen_value):
    channel = bsc_channel(0.11)
    info = construct_code(channel, 8, 4).info
    frozen = {i: frozen_value for i in range(8) if i not in info}
    code = Coset_Code_Spec(8, info, frozen)

    exact = SC_Oracle(channel.table, 8).block_error([info], [frozen])
    estimate, _ = monte_carlo(channel, code, 4000, 2026 + frozen_value)
    assert abs(binomial_z(estimate.errors, estimate.trials, exact)) < \
        Z_LIMIT


@pytest.mark.parametrize("theta", [0.5, 1.1])
def test_single_use_achieves_helstrom_bound(theta):
    code = Coset_Code_Spec(1, [0])
    estimate, _ = monte_carlo(pure_state_channel(theta), code, 20000, 5)
    exact = 0.5 * (1 - np.sin(theta))
    assert abs(binomial_z(estimate.errors, estimate.trials, exact)) < \
        Z_LIMIT


@pytest.mark.slow
def test_single_use_achieves_helstrom_bound_precisely():
    code = Coset_Code_Spec(1, [0])
    estimate, _ = monte_carlo(pure_state_channel(0.8), code, 100000, 6)
    exact = 0.5 * (1 - np.sin(0.8))
    assert abs(estimate.p_hat - exact) <= 3 * estimate.sigma()


@pytest.mark.parametrize("channel", [bsc_channel(0.15),
                                     amplitude_damping_channel(0.4)],
                         ids=["bsc", "damping"])
def test_genie_fails_exactly_when_decoder_fails(channel):
    # Both runs see the same outcomes until the first wrong decision
    code = construct_code(channel, 4, 2)
    _, plain = monte_carlo(channel, code, 200, 31)
    _, genie = monte_carlo(channel, code, 200, 31, genie=True)
    assert [r.success for r in plain] == [r.success for r in genie]


def test_genie_error_is_bounded_by_bhattacharyya_sum():
    channel = bsc_channel(0.11)
    code = construct_code(channel, 8, 4)
    bound = sum(z / 2 for i, (_, z) in
                enumerate(split_parameters(channel.table, 8))
                if i in code.info)
    estimate, _ = monte_carlo(channel, code, 2000, 32, genie=True)
    assert estimate.p_hat <= bound + 3 * estimate.sigma()


##############################################################################
# Multiple access decoding
##############################################################################

def test_product_of_noiseless_channels():
    mac = product_mac(noiseless_channel(), noiseless_channel())
    code = Polar_Code_Spec(4, [Coset_Code_Spec(4, range(4))] * 2,
                           path=[0, 1] * 4)
    estimate, _ = monte_carlo(mac, code, 40, 8)
    assert estimate.errors == 0


def test_mac_matches_classical_block_error():
    mac = adder_mac(2, 0.1)
    path = [0, 0, 1, 1, 1, 1, 0, 0]
    code = construct_mac_code(mac, 4, path, [2, 2])
    exact = SC_Oracle(mac.table, 4, path).block_error(
        [c.info for c in code.codes], [c.frozen for c in code.codes])
    estimate, records = monte_carlo(mac, code, 3000, 77)
    assert all(len(r.sent) == 2 for r in records)
    assert abs(binomial_z(estimate.errors, estimate.trials, exact)) < \
        Z_LIMIT


def outcome_mass(decoder, operand, step=0, decided=None):
    # Sum of tr(P rho P) over every outcome sequence from step on
    if decided is None:
        decided = [[] for _ in range(decoder.channel.num_senders)]
    if step == len(decoder.steps):
        return np.real(np.trace(operand))

    sender, counts = decoder.steps[step]
    prefixes = tuple(tuple(decided[s][:counts[s]])
                     for s in range(decoder.channel.num_senders))
    projector = q_core.as_matrix(decoder.projector(sender, prefixes))
    npt.assert_allclose(projector @ projector, projector, atol=1e-9)
    npt.assert_allclose(projector, projector.conj().T, atol=1e-12)

    total = 0.0
    complement = np.eye(projector.shape[0]) - projector
    for bit, branch in ((0, projector), (1, complement)):
        decided[sender].append(bit)
        total += outcome_mass(decoder, branch @ operand @ branch,
                              step + 1, decided)
        decided[sender].pop()
    return total


@pytest.mark.parametrize("N", [2, 4])
@pytest.mark.parametrize("channel, path",
                         [(amplitude_damping_channel(0.3), None),
                          (pure_state_channel(0.6), None),
                          (random_mac(5), "nu")],
                         ids=["damping", "pure", "qubit_mac"])
def test_measurement_outcomes_are_complete(channel, path, N):
    if path == "nu":
        path = nu_path(N, N // 2)
    decoder = SC_Decoder(channel, N, path)
    rng = np.random.default_rng(3)
    for _ in range(3):
        inputs = rng.integers(0, 2, size=(channel.num_senders, N))
        state = decoder.received_state(inputs)
        operand = q_core.as_matrix(state.operand)
        assert outcome_mass(decoder, operand) == \
            pytest.approx(1.0, abs=1e-7)


def test_code_must_fit_the_channel():
    code = Coset_Code_Spec(2, [1])
    with pytest.raises(Invariant_Error):
        decode_block(adder_mac(2), code, [[0, 0], [0, 0]], 1)


def test_random_inputs_respect_frozen_values():
    code = Polar_Code_Spec(4, [Coset_Code_Spec(4, [3], {0: 1, 1: 1, 2: 0}),
                               Coset_Code_Spec(4, [2, 3])])
    u = random_inputs(code, trial_rng(3))
    assert u.shape == (2, 4)
    npt.assert_array_equal(u[0, :3], [1, 1, 0])
    npt.assert_array_equal(u[1, :2], [0, 0])


##############################################################################
# Error estimates
##############################################################################

def test_wilson_interval():
    estimate = Error_Estimate(0, 100, 1)
    assert estimate.p_hat == 0
    assert estimate.ci_low == pytest.approx(0.0, abs=1e-12)
    assert estimate.ci_high == pytest.approx(0.03699, abs=1e-4)

    estimate = Error_Estimate(50, 100, 1)
    assert estimate.ci_low < 0.5 < estimate.ci_high
    assert estimate.ci_high - 0.5 == pytest.approx(0.5 - estimate.ci_low)


def test_error_estimate_needs_trials():
    with pytest.raises(Invariant_Error):
        Error_Estimate(0, 0, 1)
    with pytest.raises(Invariant_Error):
        monte_carlo(bsc_channel(0.1), Coset_Code_Spec(1, [0]), 0, 1)


@pytest.mark.parametrize("channel", [pure_state_channel(0.7),
                                     amplitude_damping_channel(0.4)],
                         ids=["pure", "damping"])
def test_genie_error_is_bounded_by_root_fidelities(channel):
    code = construct_code(channel, 4, 2)
    synth = Synthesizer(channel, 4)
    bound = sum(np.sqrt(synth.split_channel(i).evaluate()[1])
                for i in code.info)
    estimate, _ = monte_carlo(channel, code, 2000, 33, genie=True)
    assert estimate.p_hat <= bound + 3 * estimate.sigma()
