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


import itertools

import numpy as np
import numpy.testing as npt
import pytest

from cq_polar.compound_align import (good_threshold, classify_indices,
                                     Index_Partition, partition,
                                     build_alignment,
                                     compound_rate_targets,
                                     construct_compound_code,
                                     known_values, compound_decode,
                                     run_compound_trials,
                                     compound_monte_carlo)
from cq_polar.p_decoder import trial_rng, decode_block
from cq_polar.p_transform import Polar_Code_Spec
from cq_polar.q_channels import Compound_MAC
from cq_polar.q_library import (noiseless_channel, product_mac, adder_mac,
                                random_commuting_mac)
from cq_polar.mac_chains import Rate_Point, nu_path
from cq_polar.config import Config
from cq_polar.errors import Invariant_Error, Resource_Error

from classical_oracle import SC_Oracle, two_proportion_z


def noiseless_mac():
    return product_mac(noiseless_channel(), noiseless_channel())


def hand_schedule(m=1):
    partitions = [Index_Partition(4, [2, 3], [1, 3]),
                  Index_Partition(4, [2, 3], [2, 3])]
    return build_alignment(partitions, m, aligned=(0,))


##############################################################################
# Index classes
##############################################################################

def test_good_threshold():
    assert good_threshold(16, 0.25) == pytest.approx(0.25)
    assert good_threshold(1, 0.3) == pytest.approx(0.5)


def test_classify_indices():
    fids = [[[0.01, 0.5, 0.2 ** 2, 1.0]],
            [[0.3 ** 2, 0.9, 0.0, 0.36 ** 2]]]
    good, bad = classify_indices(fids, 4, 0.5 - 1e-9)
    # 2^(-4^0.5) = 0.25
    assert good == [[(0, 2)], [(2,)]]
    assert bad == [[(1, 3)], [(0, 1, 3)]]


@pytest.mark.parametrize("beta", [0.0, 0.5, 0.7, -0.1])
def test_classify_rejects_beta(beta):
    with pytest.raises(Invariant_Error):
        classify_indices([[[0.1, 0.2]]], 2, beta)


def test_partition_covers_every_index():
    p = partition(8, [1, 3, 5, 7], [3, 4, 7])
    assert p.a_i == (3, 7)
    assert p.a_ii == (1, 5)
    assert p.a_iii == (4,)
    assert p.a_iv == (0, 2, 6)
    assert sorted(itertools.chain(*p.classes())) == list(range(8))
    assert p.to_json()["A_III"] == [5]


def test_partition_rejects_out_of_range():
    with pytest.raises(Invariant_Error):
        partition(4, [4], [])


##############################################################################
# Alignment recursion
##############################################################################

@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("sizes", [(1, 1), (2, 1), (3, 1), (0, 2), (2, 0)])
def test_incompatible_fraction_identity(m, sizes):
    a_ii = list(range(sizes[0]))
    a_iii = list(range(4, 4 + sizes[1]))
    p = Index_Partition(8, [7] + a_ii, [7] + a_iii)
    schedule = build_alignment([p], m)
    assert schedule.levels[-1].fractions[0] == \
        (sizes[0] + sizes[1]) / (2 ** m * 8)
    assert schedule.incompatible_fraction(0) == \
        (sizes[0] + sizes[1]) / (2 ** m * 8)

    # the unresolved positions are incompatible, unpaired and frozen
    paired = set(itertools.chain(*[itertools.chain(*level.pairs)
                                   for level in schedule.levels]))
    surplus = set(itertools.chain(*[level.surplus
                                    for level in schedule.levels]))
    for b, i in schedule.final[0]:
        assert i in p.a_ii + p.a_iii
        assert (b, i) not in paired | surplus
        assert schedule.is_frozen(0, b, i)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_fraction_identity_with_alternating_senders(m):
    partitions = [Index_Partition(4, [0, 1], [0, 2]),
                  Index_Partition(4, [1, 2, 3], [0, 3])]
    schedule = build_alignment(partitions, m)
    assert [level.sender for level in schedule.levels] == \
        [0, 1, 0][:m]
    for s, p in enumerate(partitions):
        applied = sum(1 for level in schedule.levels if level.sender == s)
        assert schedule.levels[-1].fractions[s] == \
            (len(p.a_ii) + len(p.a_iii)) / (2 ** applied * 4)
        assert schedule.incompatible_fraction(s) == \
            schedule.levels[-1].fractions[s]


def test_balanced_classes_pair_completely():
    p = Index_Partition(4, [0, 1, 3], [0, 2, 3])
    schedule = build_alignment([p], 1)
    level = schedule.levels[0]
    assert level.pairs == [((0, 1), (1, 2))]
    assert level.surplus == []
    assert schedule.final[0] == [(0, 2), (1, 1)]
    assert schedule.info_positions(0) == [(0, 0), (0, 1), (0, 3),
                                          (1, 0), (1, 3)]
    assert schedule.rate(0) == pytest.approx(5 / 8)


def test_surplus_sources_are_frozen():
    p = Index_Partition(8, [4, 5, 6, 7], [3, 7])
    assert (p.a_ii, p.a_iii) == ((4, 5, 6), (3,))
    schedule = build_alignment([p], 1)
    level = schedule.levels[0]
    assert level.pairs == [((0, 4), (1, 3))]
    assert level.surplus == [(0, 5), (0, 6)]
    assert {(0, 5), (0, 6)} <= schedule.frozen[0]
    assert schedule.final[0] == [(0, 3), (1, 4), (1, 5), (1, 6)]
    # A_I in both blocks plus one pair
    assert schedule.rate(0) == pytest.approx(3 / 16)


def test_alignment_transform_is_an_involution():
    schedule = hand_schedule()
    words = np.array(list(itertools.product((0, 1), repeat=8)),
                     dtype=np.uint8).reshape(-1, 1, 2, 4)
    images = set()
    for w in words:
        blocks = np.concatenate([w, np.zeros_like(w)])
        once = schedule.apply_transform(blocks)
        npt.assert_array_equal(schedule.apply_transform(once), blocks)
        images.add(once.tobytes())
    assert len(images) == 2 ** 8


def test_alignment_transform_is_linear():
    schedule = hand_schedule(2)
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.integers(0, 2, size=(2, 4, 4), dtype=np.uint8)
        b = rng.integers(0, 2, size=(2, 4, 4), dtype=np.uint8)
        npt.assert_array_equal(schedule.apply_transform(a ^ b),
                               schedule.apply_transform(a) ^
                               schedule.apply_transform(b))


def test_targets_carry_their_source():
    schedule = hand_schedule()
    info = [[1, 0, 1], [1, 1, 0, 1]]
    blocks = schedule.encode(info)
    for (sb, si), (tb, ti) in schedule.levels[0].pairs:
        assert blocks[0, tb, ti] == blocks[0, sb, si]
    raw = schedule.apply_transform(blocks)
    assert schedule.extract(raw, 0) == info[0]
    assert schedule.extract(raw, 1) == info[1]


def test_assemble_checks_information_width():
    with pytest.raises(Invariant_Error):
        hand_schedule().assemble([[1, 0], [1, 1, 0, 1]])


def test_decoding_order():
    schedule = hand_schedule(2)
    assert schedule.decoding_order(0) == [0, 1, 2, 3]
    assert schedule.decoding_order(1) == [3, 2, 1, 0]


def test_known_values_follow_the_decoding_order():
    schedule = hand_schedule()
    decoded = [[[0, 0, 1, 0], None], [None, None]]
    # member 1 knows the target in block 1 from the source in block 0
    assert known_values(schedule, 0, 0, 1, decoded) == {0: 0, 1: 1, 2: 0}
    decoded = [[None, [0, 1, 0, 0]], [None, None]]
    # member 2 knows the source in block 0 from the target in block 1
    assert known_values(schedule, 1, 0, 0, decoded) == {0: 0, 1: 0, 2: 1}


@pytest.mark.parametrize("bad_call", [
    lambda: build_alignment([], 1),
    lambda: build_alignment([Index_Partition(4, [1], [2])], 0),
    lambda: build_alignment([Index_Partition(4, [1], [2]),
                             Index_Partition(8, [1], [2])], 1),
    lambda: build_alignment([Index_Partition(4, [1], [2]),
                             Index_Partition(4, [1], [2])], 1, aligned=(0,)),
    lambda: build_alignment([Index_Partition(4, [1], [2])], 1,
                            aligned=(1,)),
])
def test_build_alignment_rejects(bad_call):
    with pytest.raises(Invariant_Error):
        bad_call()


def test_alignment_levels_are_capped():
    cfg = Config()
    cfg.set("max_levels", 2)
    with pytest.raises(Resource_Error):
        build_alignment([Index_Partition(4, [1], [2])], 3, cfg)


def test_schedule_json_is_one_based():
    blob = hand_schedule().to_json()
    assert blob["blocks"] == 2
    assert blob["levels"][0]["pairs"] == [[[0, 3], [1, 2]]]
    assert blob["order"] == {"member_1": [0, 1], "member_2": [1, 0]}


##############################################################################
# Compound codes
##############################################################################

def test_compound_rate_targets():
    target = compound_rate_targets([Rate_Point([0.5, 0.2]),
                                    Rate_Point([0.3, 0.4])])
    assert target.rates == (0.3, 0.2)
    with pytest.raises(Invariant_Error):
        compound_rate_targets([])
    with pytest.raises(Invariant_Error):
        compound_rate_targets([Rate_Point([0.5]), Rate_Point([0.3, 0.4])])


def test_compound_needs_two_members():
    compound = Compound_MAC([adder_mac(2)] * 3)
    with pytest.raises(Invariant_Error, match="two members"):
        construct_compound_code(compound, 2, [nu_path(2, 1)] * 3, 1)


def test_construction_of_identical_members_has_nothing_to_align():
    mac = adder_mac(2, 0.1)
    path = nu_path(4, 2)
    code = construct_compound_code(Compound_MAC([mac, mac]), 4,
                                   [path, path], 1)
    schedule = code.schedule
    for p in schedule.partitions:
        assert p.a_ii == () and p.a_iii == ()
    assert schedule.levels[0].pairs == []
    assert code.path == path
    assert schedule.paths == [path, path]


@pytest.mark.parametrize("member", [0, 1])
def test_identical_members_reproduce_mac_decoding(member):
    mac = adder_mac(2, 0.15)
    path = nu_path(4, 1)
    compound = Compound_MAC([mac, mac])
    code = construct_compound_code(compound, 4, [path, path], 1)
    schedule = code.schedule

    records = run_compound_trials(compound, member, code, 41, 0, 25)
    for trial, record in enumerate(records):
        inputs = schedule.random_blocks(trial_rng(41, (trial, 0)))
        plain = []
        for b in range(schedule.blocks):
            block_code = Polar_Code_Spec(4, [schedule.block_code(s, b)
                                             for s in range(2)], path)
            plain.append(decode_block(mac, block_code, inputs[:, b], 41,
                                      (trial, 1, b)))
        for s in range(2):
            assert record.sent[s] == plain[0].sent[s] + plain[1].sent[s]
            assert record.decoded[s] == \
                plain[0].decoded[s] + plain[1].decoded[s]
        order = schedule.decoding_order(member)
        assert record.probabilities == \
            plain[order[0]].probabilities + plain[order[1]].probabilities


@pytest.mark.parametrize("member", [0, 1])
def test_aligned_code_over_noiseless_members(member):
    schedule = hand_schedule(2)
    path = nu_path(4, 2)
    schedule.paths = [path, path]
    code = Polar_Code_Spec(4, [schedule.block_code(s, 0) for s in range(2)],
                           path, schedule)
    compound = Compound_MAC([noiseless_mac(), noiseless_mac()])
    estimate, records = compound_monte_carlo(compound, member, code, 20, 5)
    assert estimate.errors == 0
    assert all(len(r.sent[0]) == len(schedule.info_positions(0))
               for r in records)


def test_compound_decode_checks_arguments():
    schedule = hand_schedule()
    inputs = np.zeros((2, 2, 4), dtype=np.uint8)
    with pytest.raises(Invariant_Error):
        compound_decode(noiseless_mac(), 2, schedule, inputs, 1,
                        path=nu_path(4, 0))
    with pytest.raises(Invariant_Error):
        compound_decode(noiseless_mac(), 0, schedule, inputs, 1,
                        streams=(0,), path=nu_path(4, 0))


def classical_aligned_errors(table, schedule, member, path, trials, seed):
    oracle = SC_Oracle(table, schedule.N, path.labels)
    rng = np.random.default_rng(seed)
    errors = 0
    for _ in range(trials):
        inputs = schedule.random_blocks(rng)
        decoded = [[None] * schedule.blocks
                   for _ in range(schedule.num_streams)]
        for b in schedule.decoding_order(member):
            y = oracle.sample_output(inputs[:, b], rng)
            known = [known_values(schedule, member, s, b, decoded)
                     for s in range(schedule.num_streams)]
            for s, bits in enumerate(oracle.decode(y, known)):
                decoded[s][b] = bits
        sent = schedule.apply_transform(inputs)
        got = schedule.apply_transform(np.array(decoded, dtype=np.uint8))
        if any(schedule.extract(sent, s) != schedule.extract(got, s)
               for s in range(schedule.num_streams)):
            errors += 1
    return errors


@pytest.mark.slow
@pytest.mark.parametrize("member", [0, 1])
def test_aligned_decoding_matches_classical_pipeline(member):
    members = [random_commuting_mac(61, 2, 2), random_commuting_mac(62, 2, 2)]
    compound = Compound_MAC(members)
    schedule = hand_schedule()
    path = nu_path(4, 2)
    schedule.paths = [path, path]
    code = Polar_Code_Spec(4, [schedule.block_code(s, 0) for s in range(2)],
                           path, schedule)

    trials = 10000
    estimate, _ = compound_monte_carlo(compound, member, code, trials, 71)
    errors = classical_aligned_errors(members[member].table, schedule,
                                      member, path, trials, 72)
    assert abs(two_proportion_z(estimate.errors, trials,
                                errors, trials)) < 2.576
