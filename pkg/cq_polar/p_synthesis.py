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


# Exact synthesis of split channels. The averaged output of the
# N-fold combined channel, with some leading input bits of every
# sender fixed and the rest uniform, follows the polar recursion
#
#   x_1^N = (u_odd xor u_even) G_{N/2},   x_{N/2+1}^N = u_even G_{N/2}
#
# so each average is a tensor product of two half-length averages
# (or a uniform mixture of two such products when a sender has fixed
# an odd number of bits). Averages are memoised per Synthesizer.

import itertools

import numpy as np

from cq_polar import q_core
from cq_polar.p_transform import block_exponent, Coset_Code_Spec, \
    Polar_Code_Spec
from cq_polar.q_channels import Channel_Root
from cq_polar.errors import Invariant_Error, Resource_Error
from cq_polar.config import Config, DEFAULT_CONFIG


def path_steps(labels, num_senders):
    """ For each position of a path: (sender, prefix counts of all
        senders before this position).
    """
    counts = [0] * num_senders
    rv = []
    for label in labels:
        if not 0 <= label < num_senders:
            raise Invariant_Error("path label %s is not a sender" % label)
        rv.append((label, tuple(counts)))
        counts[label] += 1
    return rv


class Split_Index:
    """ A split channel of a (multi-sender) path: the bit at position
        counts[sender] of sender, with counts[s] bits of every other
        sender s already decoded.
    """
    def __init__(self, sender, counts):
        assert isinstance(sender, int)
        self.sender = sender
        self.counts = tuple(int(c) for c in counts)

    def __repr__(self):
        return "Split_Index(%u, %s)" % (self.sender, self.counts)

    def position(self):
        return self.counts[self.sender]


class Synthesizer:
    """ Averaged outputs of the N-fold combined channel, memoised. """
    def __init__(self, channel, N, cfg=DEFAULT_CONFIG):
        assert isinstance(channel, Channel_Root)
        assert isinstance(cfg, Config)

        self.n = block_exponent(N)
        if channel.dim ** N > cfg.max_dim:
            raise Resource_Error("output dimension %u^%u exceeds max_dim %u"
                                 % (channel.dim, N, cfg.max_dim))

        self.channel     = channel
        self.N           = N
        self.num_senders = channel.num_senders
        self.dim         = channel.dim ** N
        self.diagonal    = channel.diagonal
        self.cfg         = cfg
        self.grid        = channel.grid()
        self.cache       = {}

    ##########################################################################
    # Averaged outputs

    def normalise_prefixes(self, prefixes):
        if self.num_senders == 1 and \
           all(not isinstance(p, (tuple, list, np.ndarray))
               for p in prefixes):
            prefixes = (prefixes,)
        if len(prefixes) != self.num_senders:
            raise Invariant_Error("expected prefixes for %u senders" %
                                  self.num_senders)
        rv = tuple(tuple(int(b) for b in p) for p in prefixes)
        for p in rv:
            if len(p) > self.N:
                raise Invariant_Error("prefix longer than blocklength %u" %
                                      self.N)
            if set(p) - {0, 1}:
                raise Invariant_Error("prefixes must be bits")
        return rv

    def avg_operand(self, prefixes):
        """ Average output for already normalised prefixes. """
        return self.average(self.N, prefixes)

    def average(self, size, prefixes):
        key = (size, prefixes)
        if key in self.cache:
            return self.cache[key]

        if size == 1:
            index = tuple(p[0] if p else slice(None) for p in prefixes)
            sub = self.grid[index]
            free = sum(1 for p in prefixes if not p)
            rv = sub.reshape((2 ** free,) + sub.shape[free:]).mean(axis=0)

        else:
            half = size // 2
            odd = [s for s, p in enumerate(prefixes) if len(p) % 2 == 1]
            terms = []
            for completion in itertools.product((0, 1), repeat=len(odd)):
                extra = dict(zip(odd, completion))
                first  = []
                second = []
                for s, p in enumerate(prefixes):
                    m = len(p) // 2
                    v = [p[2 * j] ^ p[2 * j + 1] for j in range(m)]
                    w = [p[2 * j + 1] for j in range(m)]
                    if s in extra:
                        v.append(p[2 * m] ^ extra[s])
                        w.append(extra[s])
                    first.append(tuple(v))
                    second.append(tuple(w))
                terms.append(q_core.tensor(self.average(half, tuple(first)),
                                           self.average(half, tuple(second))))
            rv = terms[0] if len(terms) == 1 else sum(terms) / len(terms)

        self.cache[key] = rv
        return rv

    def codeword_operand(self, codewords):
        """ The output for fully known channel inputs: codewords is a
            (k, N) array of x bits.
        """
        codewords = np.asarray(codewords, dtype=np.uint8)
        assert codewords.shape == (self.num_senders, self.N)
        ops = [self.grid[tuple(int(b) for b in codewords[:, t])]
               for t in range(self.N)]
        return q_core.tensor(*ops)

    ##########################################################################
    # Split channels

    def check_contexts(self, counts):
        if 2 ** sum(counts) > self.cfg.max_enumeration:
            raise Resource_Error("%u contexts exceed max_enumeration %u" %
                                 (2 ** sum(counts),
                                  self.cfg.max_enumeration))

    def split_channel(self, index):
        if isinstance(index, (int, np.integer)):
            if self.num_senders != 1:
                raise Invariant_Error("a MAC split channel needs a"
                                      " Split_Index")
            index = Split_Index(0, (int(index),))
        assert isinstance(index, Split_Index)
        if len(index.counts) != self.num_senders or \
           not 0 <= index.sender < self.num_senders:
            raise Invariant_Error("%s does not fit %u senders" %
                                  (index, self.num_senders))
        if not 0 <= index.position() < self.N or \
           max(index.counts) > self.N:
            raise Invariant_Error("%s out of range for blocklength %u" %
                                  (index, self.N))
        self.check_contexts(index.counts)
        return Synth_Channel(self, index)

    def path_channels(self, labels):
        return [self.split_channel(Split_Index(sender, counts))
                for sender, counts in path_steps(labels, self.num_senders)]


class Synth_Channel:
    """ W^(i)_N or a MAC split channel: for every context (the decoded
        prefixes of all senders, uniformly weighted) the pair of
        averaged outputs for bit 0 and bit 1.
    """
    def __init__(self, synthesizer, index):
        assert isinstance(synthesizer, Synthesizer)
        assert isinstance(index, Split_Index)

        self.synthesizer = synthesizer
        self.index       = index
        self.weight      = 2.0 ** -sum(index.counts)
        self.parameters  = None

    def __repr__(self):
        return "Synth_Channel(%s, N=%u)" % (self.index, self.synthesizer.N)

    def contexts(self):
        """ Iterate over (prefixes, weight). """
        ranges = [itertools.product((0, 1), repeat=c)
                  for c in self.index.counts]
        for prefixes in itertools.product(*[list(r) for r in ranges]):
            yield tuple(prefixes), self.weight

    def extend(self, prefixes, bit):
        s = self.index.sender
        return prefixes[:s] + (prefixes[s] + (bit,),) + prefixes[s + 1:]

    def pair(self, prefixes):
        return (self.synthesizer.avg_operand(self.extend(prefixes, 0)),
                self.synthesizer.avg_operand(self.extend(prefixes, 1)))

    def evaluate(self):
        """ (Holevo information, fidelity) of the split channel """
        if self.parameters is not None:
            return self.parameters

        floor = self.synthesizer.cfg.eigen_floor
        holevo = 0.0
        root_fidelity = 0.0
        for prefixes, weight in self.contexts():
            rho0, rho1 = self.pair(prefixes)
            holevo += weight * (q_core.entropy_of((rho0 + rho1) / 2, floor)
                                - q_core.entropy_of(rho0, floor) / 2
                                - q_core.entropy_of(rho1, floor) / 2)
            root_fidelity += weight * np.sqrt(q_core.fidelity_of(rho0, rho1))

        self.parameters = (max(0.0, holevo), min(1.0, root_fidelity) ** 2)
        return self.parameters


##############################################################################
# Operations
##############################################################################

def avg_output(channel, N, prefixes, cfg=DEFAULT_CONFIG):
    """ Uniform average of the N-fold output over all unset bits """
    synth = Synthesizer(channel, N, cfg)
    op = synth.avg_operand(synth.normalise_prefixes(prefixes))
    return q_core.Density_Matrix(op, cfg, "averaged output")


def synthesize(channel, N, index, cfg=DEFAULT_CONFIG, synthesizer=None):
    if synthesizer is None:
        synthesizer = Synthesizer(channel, N, cfg)
    assert synthesizer.channel is channel and synthesizer.N == N
    return synthesizer.split_channel(index)


def synth_holevo(sc):
    """ Weighted average of the per-context Holevo information, which
        is the Holevo information of the block-diagonal state that
        includes the context registers.
    """
    assert isinstance(sc, Synth_Channel)
    return sc.evaluate()[0]


def synth_fidelity(sc):
    """ Fidelity of the block-diagonal states for bit 0 and bit 1:
        (sum_ctx w_ctx sqrt F(rho_ctx0, rho_ctx1))^2.
    """
    assert isinstance(sc, Synth_Channel)
    return sc.evaluate()[1]


def rank_indices(fidelities, K):
    """ The K indices of smallest fidelity, lower index first on ties """
    if not 0 <= K <= len(fidelities):
        raise Invariant_Error("cannot pick %s of %u indices" %
                              (K, len(fidelities)))
    order = sorted(range(len(fidelities)),
                   key=lambda i: (round(fidelities[i], 12), i))
    return sorted(order[:K])


def construct_code(channel, N, K, cfg=DEFAULT_CONFIG, synthesizer=None):
    """ Polar coding rule: information set of the K split channels with
        smallest fidelity, frozen bits 0.
    """
    if synthesizer is None:
        synthesizer = Synthesizer(channel, N, cfg)
    fidelities = [synth_fidelity(synthesizer.split_channel(i))
                  for i in range(N)]
    return Coset_Code_Spec(N, rank_indices(fidelities, K))


def sender_fidelities(synthesizer, labels):
    """ Per sender, the fidelities of its split channels along a path,
        in position order.
    """
    rv = [[None] * synthesizer.N for _ in range(synthesizer.num_senders)]
    for sc in synthesizer.path_channels(labels):
        rv[sc.index.sender][sc.index.position()] = synth_fidelity(sc)
    return rv


def construct_mac_code(mac, N, path, Ks, cfg=DEFAULT_CONFIG,
                       synthesizer=None):
    """ Per-sender polar coding rule along a monotone path """
    if synthesizer is None:
        synthesizer = Synthesizer(mac, N, cfg)
    if len(Ks) != mac.num_senders:
        raise Invariant_Error("need one K per sender")
    fidelities = sender_fidelities(synthesizer, list(path))
    codes = [Coset_Code_Spec(N, rank_indices(fidelities[s], Ks[s]))
             for s in range(mac.num_senders)]
    return Polar_Code_Spec(N, codes, path)
