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


# Measurement-level simulation of the quantum successive cancellation
# decoder. Every step measures the binary projective measurement
# {Pi, I - Pi} with Pi = {sqrt(rho0) - sqrt(rho1) >= 0} built from the
# averaged outputs for the decoded prefix, samples the outcome by the
# Born rule and keeps the collapsed (unnormalised) state.

from collections import OrderedDict

import numpy as np
import scipy.stats

from cq_polar import q_core
from cq_polar.p_synthesis import Synthesizer, path_steps
from cq_polar.p_transform import Polar_Code_Spec, Coset_Code_Spec, \
    polar_encode
from cq_polar.errors import Invariant_Error, Degeneracy_Error
from cq_polar.config import Config, DEFAULT_CONFIG


def trial_rng(seed, stream=()):
    """ Independent generator for (seed, stream...) """
    return np.random.default_rng(
        np.random.SeedSequence(int(seed), spawn_key=tuple(stream)))


class Decoder_State:
    def __init__(self, operand):
        self.operand  = operand
        self.position = 0
        # unnormalised post-measurement state on B^N

    def trace(self):
        return q_core.trace_of(self.operand)


def step_measure(state, projector, rng, cfg=DEFAULT_CONFIG):
    """ Measure {projector, I - projector} on state. Returns (outcome,
        Born probability of outcome 0); the state collapses.
    """
    assert isinstance(state, Decoder_State)

    op = state.operand
    if op.ndim == 1:
        if projector.ndim != 1:
            op = np.diag(op).astype(complex)
        else:
            branch0 = projector * op
            branch1 = op - branch0
    if op.ndim == 2:
        if projector.ndim == 1:
            projector = np.diag(projector)
        complement = np.eye(op.shape[0]) - projector
        branch0 = projector @ op @ projector
        branch1 = complement @ op @ complement

    p0 = q_core.trace_of(branch0)
    p1 = q_core.trace_of(branch1)
    total = max(p0, 0.0) + max(p1, 0.0)
    if total <= cfg.degenerate_threshold:
        raise Degeneracy_Error("measurement at position %u has total"
                               " probability %.3g" %
                               (state.position + 1, total))

    prob0 = min(1.0, max(0.0, p0 / total))
    outcome = 0 if rng.random() < prob0 else 1
    state.operand = branch0 if outcome == 0 else branch1
    state.position += 1

    if state.trace() < cfg.renormalise_threshold:
        state.operand = state.operand / state.trace()

    return outcome, prob0


class Trial_Record:
    """ One decoded block: what was sent, what came out """
    def __init__(self, seed, stream, sent, decoded, probabilities,
                 degenerate=False, extra=None):
        self.seed          = int(seed)
        self.stream        = tuple(int(s) for s in stream)
        self.sent          = [[int(b) for b in bits] for bits in sent]
        self.decoded       = [[int(b) for b in bits] for bits in decoded]
        self.probabilities = [float(p) for p in probabilities]
        self.degenerate    = degenerate
        self.extra         = dict(extra) if extra else {}
        assert all(0.0 <= p <= 1.0 for p in self.probabilities)

    @property
    def success(self):
        return not self.degenerate and self.sent == self.decoded

    def __eq__(self, other):
        return isinstance(other, Trial_Record) and \
            self.to_json() == other.to_json()

    def __repr__(self):
        return "Trial_Record(%s)" % self.to_json()

    def to_json(self):
        rv = {"seed"          : self.seed,
              "stream"        : list(self.stream),
              "sent"          : self.sent,
              "decoded"       : self.decoded,
              "success"       : self.success,
              "probabilities" : self.probabilities}
        if self.degenerate:
            rv["degenerate"] = True
        rv.update(self.extra)
        return rv


class SC_Decoder:
    """ Successive cancellation over a monotone path. For a
        single-user channel the path is simply 0^N.
    """
    def __init__(self, channel, N, path=None, cfg=DEFAULT_CONFIG,
                 synthesizer=None):
        assert isinstance(cfg, Config)
        if synthesizer is None:
            synthesizer = Synthesizer(channel, N, cfg)
        assert synthesizer.channel is channel and synthesizer.N == N

        if path is None:
            if channel.num_senders != 1:
                raise Invariant_Error("a MAC decoder needs a path")
            path = [0] * N
        labels = list(path)
        if sorted(labels) != sorted(s for s in range(channel.num_senders)
                                    for _ in range(N)):
            raise Invariant_Error("path must contain every sender exactly"
                                  " %u times" % N)

        self.channel     = channel
        self.N           = N
        self.path        = path
        self.steps       = path_steps(labels, channel.num_senders)
        self.synthesizer = synthesizer
        self.cfg         = cfg
        self.projectors  = OrderedDict()

    def projector(self, sender, prefixes):
        key = (sender, prefixes)
        if key in self.projectors:
            self.projectors.move_to_end(key)
            return self.projectors[key]

        extend = lambda bit: (prefixes[:sender] +
                              (prefixes[sender] + (bit,),) +
                              prefixes[sender + 1:])
        rv = q_core.helstrom_of(self.synthesizer.avg_operand(extend(0)),
                                self.synthesizer.avg_operand(extend(1)),
                                self.cfg.eigen_floor)

        if self.cfg.projector_cache > 0:
            self.projectors[key] = rv
            if len(self.projectors) > self.cfg.projector_cache:
                self.projectors.popitem(last=False)
        return rv

    def received_state(self, inputs):
        """ State on B^N for the given u vectors (one per sender) """
        inputs = np.asarray(inputs, dtype=np.uint8).reshape(
            self.channel.num_senders, self.N)
        return Decoder_State(
            self.synthesizer.codeword_operand(polar_encode(inputs)))

    def decode(self, state, known, rng, genie=None):
        """ Run the measurement cascade on state. known[s] maps
            positions of sender s to bits that are not measured
            (frozen or otherwise known). With genie (the true u
            vectors) every projector is conditioned on the true past
            instead of the decoded one. Returns (u vectors, list of
            Born probabilities of outcome 0 of the measured steps).
        """
        assert isinstance(state, Decoder_State)
        assert len(known) == self.channel.num_senders

        decoded = [[] for _ in range(self.channel.num_senders)]
        probabilities = []
        for sender, counts in self.steps:
            position = counts[sender]
            if position in known[sender]:
                decoded[sender].append(int(known[sender][position]))
                continue

            past = genie if genie is not None else decoded
            prefixes = tuple(tuple(int(b) for b in past[s][:counts[s]])
                             for s in range(self.channel.num_senders))
            bit, prob0 = step_measure(state,
                                      self.projector(sender, prefixes),
                                      rng,
                                      self.cfg)
            decoded[sender].append(bit)
            probabilities.append(prob0)

        return decoded, probabilities


def as_code(code, num_senders):
    if isinstance(code, Coset_Code_Spec):
        code = Polar_Code_Spec(code.N, [code])
    assert isinstance(code, Polar_Code_Spec)
    if code.num_senders != num_senders:
        raise Invariant_Error("code has %u senders, channel has %u" %
                              (code.num_senders, num_senders))
    return code


def decode_block(channel, code, inputs, seed, stream=(),
                 cfg=DEFAULT_CONFIG, genie=False, decoder=None):
    """ Transmit the u vectors in inputs (one per sender) and decode
        them; success iff every information bit is recovered.
    """
    code = as_code(code, channel.num_senders)
    if decoder is None:
        decoder = SC_Decoder(channel, code.N, code.path, cfg)

    inputs = np.asarray(inputs, dtype=np.uint8).reshape(
        channel.num_senders, code.N)
    known = [dict(c.frozen) for c in code.codes]
    rng = trial_rng(seed, stream)

    sent = [c.extract(u) for c, u in zip(code.codes, inputs)]
    try:
        decoded, probabilities = decoder.decode(
            decoder.received_state(inputs), known, rng,
            genie=inputs if genie else None)
    except Degeneracy_Error:
        return Trial_Record(seed, stream, sent,
                            [[] for _ in code.codes], [],
                            degenerate=True)

    return Trial_Record(seed, stream, sent,
                        [c.extract(np.array(u, dtype=np.uint8))
                         for c, u in zip(code.codes, decoded)],
                        probabilities)


def random_inputs(code, rng):
    """ u vectors with uniformly random information bits """
    return np.array([c.assemble(rng.integers(0, 2, size=c.K,
                                             dtype=np.uint8))
                     for c in code.codes])


def run_trials(channel, code, seed, first, count, cfg=DEFAULT_CONFIG,
               genie=False, decoder=None):
    code = as_code(code, channel.num_senders)
    if decoder is None:
        decoder = SC_Decoder(channel, code.N, code.path, cfg)
    records = []
    for trial in range(first, first + count):
        inputs = random_inputs(code, trial_rng(seed, (trial, 0)))
        records.append(decode_block(channel, code, inputs, seed,
                                    (trial, 1), cfg, genie, decoder))
    return records


class Error_Estimate:
    """ Block error rate with a 95% Wilson interval """
    def __init__(self, errors, trials, seed, degenerate=0):
        if trials < 1:
            raise Invariant_Error("need at least one trial")
        assert 0 <= errors <= trials

        self.errors     = errors
        self.trials     = trials
        self.seed       = seed
        self.degenerate = degenerate
        self.p_hat      = errors / trials

        ci = scipy.stats.binomtest(errors, trials).proportion_ci(
            confidence_level=0.95, method="wilson")
        self.ci_low  = float(ci.low)
        self.ci_high = float(ci.high)

    def sigma(self):
        return np.sqrt(max(self.p_hat * (1 - self.p_hat), 1e-300) /
                       self.trials)

    def to_json(self):
        return {"errors"     : self.errors,
                "trials"     : self.trials,
                "seed"       : self.seed,
                "p_hat"      : self.p_hat,
                "ci_low"     : self.ci_low,
                "ci_high"    : self.ci_high,
                "degenerate" : self.degenerate}


def summarise(records, seed):
    return Error_Estimate(sum(1 for r in records if not r.success),
                          len(records),
                          seed,
                          sum(1 for r in records if r.degenerate))


def monte_carlo(channel, code, trials, seed, cfg=DEFAULT_CONFIG,
                genie=False):
    """ Block error estimate over trials independent blocks; trial t
        draws its message and its measurement outcomes from streams
        derived from (seed, t).
    """
    if trials < 1:
        raise Invariant_Error("need at least one trial")
    records = run_trials(channel, code, seed, 0, trials, cfg, genie)
    return summarise(records, seed), records
