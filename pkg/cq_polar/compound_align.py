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


# Alignment of polar indices for compound MACs with two members. The
# receiver knows which member is in use, the senders do not. Indices
# of each sender fall into four classes:
#
#   A_I   good for both members       information in every block
#   A_II  good for member 1 only      aligned (source side)
#   A_III good for member 2 only      aligned (target side)
#   A_IV  bad for both                frozen
#
# 2^m blocks are combined level by level. Level l aligns one sender:
# in every adjacent pair of super-blocks (X, Y) of size 2^(l-1) the
# unresolved A_II indices of X are paired with the unresolved A_III
# indices of Y. A pair carries one information bit, copied from the
# source onto the target by a CNOT. Member 1 decodes the blocks in
# ascending order (targets are known once their source is decoded),
# member 2 in descending order (sources are known from their target).

import numpy as np

from cq_polar.p_synthesis import Synthesizer, sender_fidelities
from cq_polar.p_decoder import (SC_Decoder, Decoder_State, Trial_Record,
                                trial_rng, summarise)
from cq_polar.p_transform import (Coset_Code_Spec, Polar_Code_Spec,
                                  polar_encode)
from cq_polar.q_channels import Compound_MAC
from cq_polar.mac_chains import Rate_Point
from cq_polar.errors import (Invariant_Error, Resource_Error,
                             Degeneracy_Error)
from cq_polar.config import DEFAULT_CONFIG


def good_threshold(N, beta):
    return 2.0 ** -(N ** beta)


def classify_indices(fidelities, N, beta):
    """ Split indices into good (sqrt F < 2^(-N^beta)) and bad ones.

    fidelities[member][sender] is the list of fidelities of that
    sender's split channels. Returns (good, bad) with the same nesting.
    """
    if not 0 < beta < 0.5:
        raise Invariant_Error("beta must be in (0, 1/2), not %g" % beta)
    threshold = good_threshold(N, beta)

    good = []
    bad  = []
    for per_member in fidelities:
        good.append([])
        bad.append([])
        for values in per_member:
            if len(values) != N:
                raise Invariant_Error("expected %u fidelities, got %u" %
                                      (N, len(values)))
            good[-1].append(tuple(i for i, f in enumerate(values)
                                  if np.sqrt(max(f, 0.0)) < threshold))
            bad[-1].append(tuple(i for i, f in enumerate(values)
                                 if not np.sqrt(max(f, 0.0)) < threshold))
    return good, bad


class Index_Partition:
    """ The four classes of one sender's indices """
    def __init__(self, N, good_1, good_2):
        good_1 = set(int(i) for i in good_1)
        good_2 = set(int(i) for i in good_2)
        if not good_1 | good_2 <= set(range(N)):
            raise Invariant_Error("good indices out of range for"
                                  " blocklength %u" % N)
        everything = set(range(N))
        self.N     = N
        self.a_i   = tuple(sorted(good_1 & good_2))
        self.a_ii  = tuple(sorted(good_1 - good_2))
        self.a_iii = tuple(sorted(good_2 - good_1))
        self.a_iv  = tuple(sorted(everything - good_1 - good_2))

    def __repr__(self):
        return "Index_Partition(I=%s, II=%s, III=%s, IV=%s)" % \
            (self.a_i, self.a_ii, self.a_iii, self.a_iv)

    def classes(self):
        return (self.a_i, self.a_ii, self.a_iii, self.a_iv)

    def to_json(self):
        return {"A_I"   : [i + 1 for i in self.a_i],
                "A_II"  : [i + 1 for i in self.a_ii],
                "A_III" : [i + 1 for i in self.a_iii],
                "A_IV"  : [i + 1 for i in self.a_iv]}


def partition(N, good_1, good_2):
    return Index_Partition(N, good_1, good_2)


class Alignment_Level:
    def __init__(self, level, sender):
        self.level     = level
        self.sender    = sender
        self.pairs     = []
        self.surplus   = []
        self.fractions = {}
        # pairs: ((block, index) source, (block, index) target)

    def to_json(self):
        return {"level"     : self.level,
                "sender"    : self.sender,
                "pairs"     : [[[sb, si + 1], [tb, ti + 1]]
                               for (sb, si), (tb, ti) in self.pairs],
                "surplus"   : [[b, i + 1] for b, i in self.surplus],
                "fractions" : {str(s): f
                               for s, f in sorted(self.fractions.items())}}


class Alignment_Schedule:
    """ The result of the alignment recursion for every stream (sender)
        over 2^m blocks.
    """
    def __init__(self, N, m, partitions, aligned):
        self.N          = N
        self.m          = m
        self.blocks     = 2 ** m
        self.partitions = list(partitions)
        self.aligned    = tuple(aligned)
        self.levels     = []
        self.paths      = None

        num = len(self.partitions)
        self.frozen    = [set() for _ in range(num)]
        self.source_of = [{} for _ in range(num)]
        self.target_of = [{} for _ in range(num)]
        self.final     = [[] for _ in range(num)]

    @property
    def num_streams(self):
        return len(self.partitions)

    def is_frozen(self, stream, block, index):
        return (block, index) in self.frozen[stream]

    def info_positions(self, stream):
        """ (block, index) of the information bits of stream, in block
            then index order: A_I everywhere plus every pair source.
        """
        rv = []
        a_i = set(self.partitions[stream].a_i)
        for b in range(self.blocks):
            for i in range(self.N):
                if i in a_i or (b, i) in self.target_of[stream]:
                    rv.append((b, i))
        return rv

    def rate(self, stream):
        return len(self.info_positions(stream)) / (self.blocks * self.N)

    def incompatible_fraction(self, stream):
        """ Share of the positions of stream left unresolved by every
            level (and therefore frozen at the end).
        """
        return len(self.final[stream]) / (self.blocks * self.N)

    def decoding_order(self, member):
        if member == 0:
            return list(range(self.blocks))
        return list(reversed(range(self.blocks)))

    def assemble(self, info_bits):
        """ Raw (untransformed) blocks, shape (streams, blocks, N) """
        raw = np.zeros((self.num_streams, self.blocks, self.N),
                       dtype=np.uint8)
        for s in range(self.num_streams):
            positions = self.info_positions(s)
            bits = np.asarray(info_bits[s], dtype=np.uint8)
            if bits.shape != (len(positions),):
                raise Invariant_Error("stream %u expects %u information"
                                      " bits" % (s, len(positions)))
            for (b, i), bit in zip(positions, bits):
                raw[s, b, i] = bit
        return raw

    def extract(self, raw, stream):
        return [int(raw[stream, b, i]) for b, i in self.info_positions(stream)]

    def apply_transform(self, blocks):
        """ XOR every pair source onto its target. The pairs are
            disjoint, so this is its own inverse.
        """
        rv = np.array(blocks, dtype=np.uint8, copy=True)
        for level in self.levels:
            s = level.sender
            for (sb, si), (tb, ti) in level.pairs:
                rv[s, tb, ti] ^= rv[s, sb, si]
        return rv

    def encode(self, info_bits):
        """ u blocks ready for the polar transform """
        return self.apply_transform(self.assemble(info_bits))

    def random_blocks(self, rng):
        info = [rng.integers(0, 2, size=len(self.info_positions(s)),
                             dtype=np.uint8)
                for s in range(self.num_streams)]
        return self.encode(info)

    def block_code(self, stream, block):
        """ The coset code of one block as seen without alignment:
            frozen positions at 0, everything else information.
        """
        frozen = {i: 0 for b, i in self.frozen[stream] if b == block}
        info = [i for i in range(self.N) if i not in frozen]
        return Coset_Code_Spec(self.N, info, frozen)

    def to_json(self):
        rv = {"N"          : self.N,
              "m"          : self.m,
              "blocks"     : self.blocks,
              "aligned"    : list(self.aligned),
              "partitions" : [p.to_json() for p in self.partitions],
              "levels"     : [level.to_json() for level in self.levels],
              "final_frozen" : [[[b, i + 1] for b, i in sorted(final)]
                                for final in self.final],
              "rates"      : [self.rate(s)
                              for s in range(self.num_streams)],
              "order"      : {"member_1": self.decoding_order(0),
                              "member_2": self.decoding_order(1)}}
        if self.paths is not None:
            rv["paths"] = ["".join(str(label) for label in path)
                           if path is not None else None
                           for path in self.paths]
        return rv


def build_alignment(partitions, m, cfg=DEFAULT_CONFIG, aligned=None):
    """ Run the alignment recursion for m levels. Streams not listed
        in aligned (default: all) must have empty A_II and A_III.
    """
    if not partitions:
        raise Invariant_Error("no partitions to align")
    Ns = set(p.N for p in partitions)
    if len(Ns) != 1:
        raise Invariant_Error("partitions have different blocklengths")
    if m < 1:
        raise Invariant_Error("need at least one alignment level")
    if m > cfg.max_levels:
        raise Resource_Error("%u alignment levels exceed max_levels %u" %
                             (m, cfg.max_levels))
    if aligned is None:
        aligned = tuple(range(len(partitions)))
    aligned = tuple(aligned)
    if not aligned or set(aligned) - set(range(len(partitions))):
        raise Invariant_Error("invalid aligned senders %s" % (aligned,))
    for s, p in enumerate(partitions):
        if s not in aligned and (p.a_ii or p.a_iii):
            raise Invariant_Error("sender %u is not aligned but has"
                                  " incompatible indices" % s)

    N = Ns.pop()
    schedule = Alignment_Schedule(N, m, partitions, aligned)

    # unresolved[s] is the set of incompatible (block, index) of s
    # that are neither paired nor frozen yet
    unresolved = []
    for s, p in enumerate(partitions):
        unresolved.append(set((b, i)
                              for b in range(schedule.blocks)
                              for i in p.a_ii + p.a_iii))
        schedule.frozen[s] |= set((b, i)
                                  for b in range(schedule.blocks)
                                  for i in p.a_iv)

    for level in range(1, m + 1):
        s = aligned[(level - 1) % len(aligned)]
        p = partitions[s]
        record = Alignment_Level(level, s)
        size = 2 ** (level - 1)

        for first in range(0, schedule.blocks, 2 * size):
            x_blocks = range(first, first + size)
            y_blocks = range(first + size, first + 2 * size)
            sources = [(b, i) for b in x_blocks for i in p.a_ii
                       if (b, i) in unresolved[s]]
            targets = [(b, i) for b in y_blocks for i in p.a_iii
                       if (b, i) in unresolved[s]]

            for source, target in zip(sources, targets):
                record.pairs.append((source, target))
                schedule.source_of[s][target] = source
                schedule.target_of[s][source] = target
                unresolved[s] -= {source, target}

            common = min(len(sources), len(targets))
            for position in sources[common:] + targets[common:]:
                record.surplus.append(position)
                schedule.frozen[s].add(position)
                unresolved[s].discard(position)

        for t in range(len(partitions)):
            record.fractions[t] = len(unresolved[t]) / (schedule.blocks * N)
        schedule.levels.append(record)

    for s in range(len(partitions)):
        schedule.final[s] = sorted(unresolved[s])
        schedule.frozen[s] |= unresolved[s]

    return schedule


def compound_rate_targets(rate_points):
    """ Componentwise minimum of the member rate points """
    if not rate_points:
        raise Invariant_Error("no rate points")
    sizes = set(len(point) for point in rate_points)
    if len(sizes) != 1:
        raise Invariant_Error("rate points have different numbers of"
                              " senders")
    return Rate_Point([min(point[s] for point in rate_points)
                       for s in range(sizes.pop())])


def require_two_members(compound):
    assert isinstance(compound, Compound_MAC)
    if len(compound.members) != 2:
        raise Invariant_Error("compound alignment is defined for two"
                              " members, this compound has %u" %
                              len(compound.members))


def construct_compound_code(compound, N, paths, m, cfg=DEFAULT_CONFIG,
                            beta=None):
    """ Good sets of both members along their paths, the partition of
        every sender and the alignment schedule, bundled as a
        Polar_Code_Spec whose per-sender codes are the block view of
        block 0.
    """
    require_two_members(compound)
    if len(paths) != 2:
        raise Invariant_Error("need one path per member")
    if beta is None:
        beta = cfg.beta

    fidelities = []
    for member, path in zip(compound.members, paths):
        synthesizer = Synthesizer(member, N, cfg)
        fidelities.append(sender_fidelities(synthesizer, list(path)))
    good, _ = classify_indices(fidelities, N, beta)

    partitions = [partition(N, good[0][s], good[1][s])
                  for s in range(compound.num_senders)]
    schedule = build_alignment(partitions, m, cfg)
    schedule.paths = list(paths)

    codes = [schedule.block_code(s, 0) for s in range(compound.num_senders)]
    return Polar_Code_Spec(N, codes, paths[0], schedule)


def known_values(schedule, member, stream, block, decoded):
    """ The positions of one block that are not measured, with their
        values given what has been decoded so far.
    """
    rv = {}
    partner = schedule.source_of if member == 0 else schedule.target_of
    for i in range(schedule.N):
        if (block, i) in schedule.frozen[stream]:
            rv[i] = 0
        elif (block, i) in partner[stream]:
            pb, pi = partner[stream][(block, i)]
            assert decoded[stream][pb] is not None
            rv[i] = decoded[stream][pb][pi]
    return rv


def compound_decode(channel, member, schedule, inputs, seed, stream=(),
                    cfg=DEFAULT_CONFIG, decoder=None, streams=None,
                    path=None, transmit=None):
    """ Decode all blocks of an aligned transmission over the member
        channel the receiver knows to be in use.

    inputs has shape (streams, blocks, N) and holds the transformed u
    blocks. streams maps the senders of channel to schedule streams
    (default: identity). Block b is measured with the generator of
    (seed, stream + (b,)). transmit(b), if given, returns the received
    operand of block b; by default the inputs of the mapped streams
    are sent through channel.
    """
    assert isinstance(schedule, Alignment_Schedule)
    if member not in (0, 1):
        raise Invariant_Error("member must be 1 or 2")
    if streams is None:
        streams = tuple(range(channel.num_senders))
    streams = tuple(streams)
    if len(streams) != channel.num_senders:
        raise Invariant_Error("need one stream per sender of the channel")
    if path is None and schedule.paths is not None:
        path = schedule.paths[member]
    if decoder is None:
        decoder = SC_Decoder(channel, schedule.N, path, cfg)

    inputs = np.asarray(inputs, dtype=np.uint8)
    assert inputs.shape == (schedule.num_streams, schedule.blocks,
                            schedule.N)

    decoded = [[None] * schedule.blocks for _ in range(schedule.num_streams)]
    probabilities = []
    for b in schedule.decoding_order(member):
        if transmit is None:
            state = decoder.received_state(inputs[list(streams), b])
        else:
            state = Decoder_State(transmit(b))
        known = [known_values(schedule, member, t, b, decoded)
                 for t in streams]
        try:
            bits, probs = decoder.decode(state, known,
                                         trial_rng(seed, tuple(stream) +
                                                   (b,)))
        except Degeneracy_Error:
            sent = [schedule.extract(schedule.apply_transform(inputs), t)
                    for t in streams]
            return Trial_Record(seed, stream, sent, [[] for _ in streams],
                                probabilities, degenerate=True)
        for t, u in zip(streams, bits):
            decoded[t][b] = u
        probabilities += probs

    raw_sent = schedule.apply_transform(inputs)
    result = np.zeros_like(inputs)
    for t in streams:
        for b in range(schedule.blocks):
            result[t, b] = decoded[t][b]
    raw_decoded = schedule.apply_transform(result)

    return Trial_Record(seed, stream,
                        [schedule.extract(raw_sent, t) for t in streams],
                        [schedule.extract(raw_decoded, t) for t in streams],
                        probabilities)


def run_compound_trials(compound, member, code, seed, first, count,
                        cfg=DEFAULT_CONFIG, decoder=None):
    """ Trials first .. first + count - 1 of an aligned code over one
        member. Trial t draws its messages from (seed, t, 0) and
        decodes with (seed, t, 1, block).
    """
    require_two_members(compound)
    schedule = code.schedule
    channel = compound.members[member]
    if decoder is None:
        decoder = SC_Decoder(channel, schedule.N, schedule.paths[member],
                             cfg)

    records = []
    for trial in range(first, first + count):
        inputs = schedule.random_blocks(trial_rng(seed, (trial, 0)))
        records.append(compound_decode(channel, member, schedule, inputs,
                                       seed, (trial, 1), cfg, decoder))
    return records


def compound_monte_carlo(compound, member, code, trials, seed,
                         cfg=DEFAULT_CONFIG):
    """ Block error estimate of an aligned code over one member """
    if trials < 1:
        raise Invariant_Error("need at least one trial")
    records = run_compound_trials(compound, member, code, seed, 0, trials,
                                  cfg)
    return summarise(records, seed), records


def transmit_blocks(synthesizer, inputs):
    """ A transmit function sending all streams of inputs through the
        channel of synthesizer.
    """
    def transmit(block):
        return synthesizer.codeword_operand(polar_encode(inputs[:, block]))
    return transmit
