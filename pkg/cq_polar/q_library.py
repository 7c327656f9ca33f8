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


# Named channels used throughout the tests, the sample documents and
# the command-line tools.

import numpy as np

from cq_polar import q_core
from cq_polar.q_channels import (CQ_Channel, CQ_MAC,
                                 CQ_Interference_Channel,
                                 input_tuples)
from cq_polar.errors import Invariant_Error
from cq_polar.config import DEFAULT_CONFIG


def pure(vector):
    v = np.asarray(vector, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def check_probability(name, value):
    if not 0.0 <= value <= 1.0:
        raise Invariant_Error("%s must be in [0, 1], not %g" % (name, value))


##############################################################################
# Single-user channels
##############################################################################

def noiseless_channel(cfg=DEFAULT_CONFIG):
    return CQ_Channel([np.diag([1.0, 0.0]), np.diag([0.0, 1.0])], cfg)


def useless_channel(dim=2, cfg=DEFAULT_CONFIG):
    mixed = np.eye(dim) / dim
    return CQ_Channel([mixed, mixed], cfg)


def bsc_channel(p, cfg=DEFAULT_CONFIG):
    """ Binary symmetric channel embedded as commuting qubit states """
    check_probability("crossover probability", p)
    return CQ_Channel([np.diag([1.0 - p, p]), np.diag([p, 1.0 - p])], cfg)


def bec_channel(e, cfg=DEFAULT_CONFIG):
    """ Binary erasure channel; the third basis state is the erasure """
    check_probability("erasure probability", e)
    return CQ_Channel([np.diag([1.0 - e, 0.0, e]),
                       np.diag([0.0, 1.0 - e, e])], cfg)


def pure_state_channel(theta, cfg=DEFAULT_CONFIG):
    """ |0> and cos(theta)|0> + sin(theta)|1>, overlap cos(theta) """
    return CQ_Channel([pure([1.0, 0.0]),
                       pure([np.cos(theta), np.sin(theta)])], cfg)


def amplitude_damping_channel(gamma, cfg=DEFAULT_CONFIG):
    """ |+> and |-> sent through amplitude damping with parameter
        gamma; the outputs do not commute for 0 < gamma < 1.
    """
    check_probability("damping parameter", gamma)
    off = np.sqrt(1.0 - gamma) / 2
    return CQ_Channel([np.array([[(1 + gamma) / 2, off],
                                 [off, (1 - gamma) / 2]]),
                       np.array([[(1 + gamma) / 2, -off],
                                 [-off, (1 - gamma) / 2]])], cfg)


def random_state(rng, dim, rank=None):
    """ Ginibre-distributed mixed state """
    if rank is None:
        rank = dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_channel(seed, dim=2, cfg=DEFAULT_CONFIG):
    rng = np.random.default_rng(seed)
    return CQ_Channel([random_state(rng, dim), random_state(rng, dim)], cfg)


##############################################################################
# Multiple access channels
##############################################################################

def product_mac(first, second, cfg=DEFAULT_CONFIG):
    """ rho_{x,y} = first_x (x) second_y """
    assert isinstance(first, CQ_Channel)
    assert isinstance(second, CQ_Channel)
    return CQ_MAC(2,
                  [np.kron(first.output((x,)).matrix,
                           second.output((y,)).matrix)
                   for x, y in input_tuples(2)],
                  cfg)


def useless_mac(num_senders=2, dim=2, cfg=DEFAULT_CONFIG):
    mixed = np.eye(dim) / dim
    return CQ_MAC(num_senders, [mixed] * 2 ** num_senders, cfg)


def adder_mac(num_senders=2, noise=0.0, cfg=DEFAULT_CONFIG):
    """ Commuting binary adder: the output basis state is the number
        of ones among the inputs, mixed with the uniform distribution
        with weight noise.
    """
    check_probability("noise", noise)
    dim = num_senders + 1
    outputs = []
    for bits in input_tuples(num_senders):
        p = np.full(dim, noise / dim)
        p[sum(bits)] += 1.0 - noise
        outputs.append(np.diag(p))
    return CQ_MAC(num_senders, outputs, cfg)


def random_mac(seed, num_senders=2, dim=2, cfg=DEFAULT_CONFIG):
    rng = np.random.default_rng(seed)
    return CQ_MAC(num_senders,
                  [random_state(rng, dim) for _ in range(2 ** num_senders)],
                  cfg)


def random_commuting_mac(seed, num_senders=2, dim=3, cfg=DEFAULT_CONFIG):
    rng = np.random.default_rng(seed)
    return CQ_MAC(num_senders,
                  [np.diag(rng.dirichlet(np.ones(dim)))
                   for _ in range(2 ** num_senders)],
                  cfg)


##############################################################################
# Interference channels
##############################################################################

def product_interference_channel(first, second, cfg=DEFAULT_CONFIG):
    """ No cross-talk: rho_{x1,x2} = first_{x1} (x) second_{x2} """
    assert isinstance(first, CQ_Channel)
    assert isinstance(second, CQ_Channel)
    return CQ_Interference_Channel(
        [np.kron(first.output((x1,)).matrix, second.output((x2,)).matrix)
         for x1, x2 in input_tuples(2)],
        (first.dim, second.dim),
        cfg)


def cross_talk_state(own, other, p_clean, p_noisy, angle):
    """ Qubit seen by a receiver whose own sender sends own and the
        other sender sends other.
    """
    q = p_clean if other == 0 else p_noisy
    if angle is None:
        return np.diag([1.0 - q, q]) if own == 0 else np.diag([q, 1.0 - q])
    phi = own * np.pi / 2 + (angle if other else 0.0)
    return (1.0 - q) * pure([np.cos(phi), np.sin(phi)]) + q * np.eye(2) / 2


def cross_talk_interference(p_clean=0.05, p_noisy=0.2, angle=None,
                            cfg=DEFAULT_CONFIG):
    """ Swap-symmetric interference channel on two qubits. Receiver r
        sees its own sender through a noisy qubit whose noise grows
        when the other sender sends 1; with an angle the other
        sender also rotates the state and the outputs stop commuting.
    """
    check_probability("p_clean", p_clean)
    check_probability("p_noisy", p_noisy)
    return CQ_Interference_Channel(
        [np.kron(cross_talk_state(x1, x2, p_clean, p_noisy, angle),
                 cross_talk_state(x2, x1, p_clean, p_noisy, angle))
         for x1, x2 in input_tuples(2)],
        (2, 2),
        cfg)


def depolarize_receiver(ic, receiver, p):
    """ Apply a depolarizing channel with parameter p to the output
        factor of one receiver (0 or 1).
    """
    assert isinstance(ic, CQ_Interference_Channel)
    assert receiver in (0, 1)
    check_probability("depolarizing parameter", p)

    d1, d2 = ic.dims
    outputs = []
    for rho in ic.states:
        if receiver == 0:
            rest = q_core.partial_trace(rho, ic.dims, [1], ic.cfg).matrix
            noise = np.kron(np.eye(d1) / d1, rest)
        else:
            rest = q_core.partial_trace(rho, ic.dims, [0], ic.cfg).matrix
            noise = np.kron(rest, np.eye(d2) / d2)
        outputs.append((1.0 - p) * rho.matrix + p * noise)
    return CQ_Interference_Channel(outputs, ic.dims, ic.cfg)
