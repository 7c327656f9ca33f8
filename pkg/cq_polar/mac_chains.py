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


# Monotone chain rules for two- and three-sender MACs: paths, the rate
# region bounds, the rates achieved by a path, and the search for a
# path approximating a given rate point.

import itertools

from cq_polar import q_core
from cq_polar.p_synthesis import Synthesizer, path_steps, synth_holevo
from cq_polar.q_channels import Channel_Root, input_tuples
from cq_polar.errors import Invariant_Error, Resource_Error
from cq_polar.config import DEFAULT_CONFIG


class Chain_Path:
    """ A monotone path: a label sequence in which every sender
        0..k-1 appears exactly N times.
    """
    def __init__(self, labels, num_senders=None):
        labels = tuple(int(label) for label in labels)
        if num_senders is None:
            num_senders = max(labels) + 1 if labels else 0
        if num_senders < 1 or not labels:
            raise Invariant_Error("empty path")
        if len(labels) % num_senders != 0:
            raise Invariant_Error("path length %u is not a multiple of %u"
                                  % (len(labels), num_senders))
        N = len(labels) // num_senders
        for s in range(num_senders):
            if labels.count(s) != N:
                raise Invariant_Error("sender %u appears %u times in path"
                                      " %s, expected %u" %
                                      (s, labels.count(s),
                                       "".join(map(str, labels)), N))
        if set(labels) - set(range(num_senders)):
            raise Invariant_Error("path labels must be in 0..%u" %
                                  (num_senders - 1))

        self.labels      = labels
        self.num_senders = num_senders
        self.N           = N

    @classmethod
    def from_string(cls, text, num_senders=None):
        if not text or set(text) - set("0123456789"):
            raise Invariant_Error("path '%s' must be a string of sender"
                                  " labels" % text)
        return cls([int(c) for c in text], num_senders)

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __str__(self):
        return "".join(str(label) for label in self.labels)

    def __repr__(self):
        return "Chain_Path(%s)" % self

    def __eq__(self, other):
        return isinstance(other, Chain_Path) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def steps(self):
        return path_steps(self.labels, self.num_senders)


def nu_path(N, i):
    """ 0^i 1^N 0^(N-i) """
    if not 0 <= i <= N:
        raise Invariant_Error("i must be in 0..%u" % N)
    return Chain_Path([0] * i + [1] * N + [0] * (N - i), 2)


def nu_class(N):
    return [nu_path(N, i) for i in range(N + 1)]


def mu_path(N, order, a, b):
    """ s0^a s1^b s2^N s1^(N-b) s0^(N-a) for the sender order (s0, s1,
        s2); corner orders are a = b = N.
    """
    if sorted(order) != [0, 1, 2]:
        raise Invariant_Error("order must be a permutation of 0, 1, 2")
    if not (0 <= a <= N and 0 <= b <= N):
        raise Invariant_Error("a and b must be in 0..%u" % N)
    s0, s1, s2 = order
    return Chain_Path([s0] * a + [s1] * b + [s2] * N +
                      [s1] * (N - b) + [s0] * (N - a), 3)


def mu_class(N):
    rv = []
    seen = set()
    for order in itertools.permutations(range(3)):
        for a in range(N + 1):
            for b in range(N + 1):
                path = mu_path(N, order, a, b)
                if path not in seen:
                    seen.add(path)
                    rv.append(path)
    return sorted(rv, key=str)


def scale_path(path, k):
    """ Every label repeated k times in place """
    assert isinstance(path, Chain_Path)
    if k < 1:
        raise Invariant_Error("scale factor must be at least 1")
    return Chain_Path([label for label in path for _ in range(k)],
                      path.num_senders)


def are_neighbors(p, q):
    """ p and q differ by swapping two different labels at positions
        i < j, with every label strictly between them equal.
    """
    assert isinstance(p, Chain_Path) and isinstance(q, Chain_Path)
    if len(p) != len(q) or p.num_senders != q.num_senders:
        return False
    diff = [t for t in range(len(p)) if p.labels[t] != q.labels[t]]
    if len(diff) != 2:
        return False
    i, j = diff
    if p.labels[i] != q.labels[j] or p.labels[j] != q.labels[i]:
        return False
    between = set(p.labels[i + 1:j])
    return len(between) <= 1


class Rate_Point:
    def __init__(self, rates):
        self.rates = tuple(float(r) for r in rates)

    def __getitem__(self, sender):
        return self.rates[sender]

    def __len__(self):
        return len(self.rates)

    def __repr__(self):
        return "Rate_Point(%s)" % ", ".join("%.6f" % r for r in self.rates)

    def total(self):
        return sum(self.rates)

    def to_json(self):
        return list(self.rates)


##############################################################################
# Region bounds
##############################################################################

def conditional_holevo(mac, subset, given=(), cfg=DEFAULT_CONFIG):
    """ I(X_subset; B | X_given) with uniform inputs; every other
        sender is averaged out.
    """
    assert isinstance(mac, Channel_Root)
    subset = tuple(sorted(subset))
    given = tuple(sorted(given))
    k = mac.num_senders
    if not subset or set(subset) & set(given) or \
       not set(subset + given) <= set(range(k)):
        raise Invariant_Error("invalid sender sets %s | %s" %
                              (subset, given))

    rest = tuple(s for s in range(k) if s not in subset + given)
    grid = mac.grid()
    weight = 2.0 ** -(len(subset) + len(given))

    weights = {}
    states = {}
    for xs in input_tuples(len(subset)):
        for xg in input_tuples(len(given)):
            index = [slice(None)] * k
            for s, b in zip(subset + given, xs + xg):
                index[s] = b
            sub = grid[tuple(index)]
            sub = sub.reshape((2 ** len(rest),) + sub.shape[len(rest):])
            weights[(xs, xg)] = weight
            states[(xs, xg)] = sub.mean(axis=0)

    cq = q_core.Classical_Quantum_State(weights, states, mac.cfg)
    return q_core.conditional_mutual_information(cq)


def sender_name(s):
    return "R%u" % (s + 1)


class Region_Bounds:
    """ The bounds sum_{s in S} R_s <= I(X_S; B | X_{S^c}) for every
        non-empty S, plus the unconditioned terms for the corners.
    """
    def __init__(self, mac, cfg=DEFAULT_CONFIG):
        assert isinstance(mac, Channel_Root)
        if mac.num_senders not in (2, 3):
            raise Invariant_Error("region bounds are computed for 2 or 3"
                                  " senders, not %u" % mac.num_senders)
        k = mac.num_senders
        self.num_senders = k
        self.bounds = {}
        self.terms  = {}
        for size in range(1, k + 1):
            for subset in itertools.combinations(range(k), size):
                others = tuple(s for s in range(k) if s not in subset)
                self.bounds[subset] = conditional_holevo(mac, subset,
                                                         others, cfg)
        # I(X_S; B | X_G) for all disjoint S, G; used for corners
        for size in range(1, k + 1):
            for subset in itertools.combinations(range(k), size):
                others = [s for s in range(k) if s not in subset]
                for gsize in range(len(others) + 1):
                    for given in itertools.combinations(others, gsize):
                        self.terms[(subset, given)] = \
                            conditional_holevo(mac, subset, given, cfg)

    def bound(self, subset):
        return self.bounds[tuple(sorted(subset))]

    def sum_rate(self):
        return self.bounds[tuple(range(self.num_senders))]

    def corner(self, order):
        """ Rates when senders are decoded one after the other in the
            given order.
        """
        rates = [0.0] * self.num_senders
        for t, s in enumerate(order):
            rates[s] = self.terms[((s,), tuple(sorted(order[:t])))]
        return Rate_Point(rates)

    def named(self):
        return {"+".join(sender_name(s) for s in subset): value
                for subset, value in sorted(self.bounds.items(),
                                            key=lambda kv: (len(kv[0]),
                                                            kv[0]))}

    def contains(self, rates, tolerance):
        return all(sum(rates[s] for s in subset) <= value + tolerance
                   for subset, value in self.bounds.items()) and \
            all(r >= -tolerance for r in rates)

    def on_dominant_face(self, rates, tolerance):
        return self.contains(rates, tolerance) and \
            abs(sum(rates) - self.sum_rate()) <= tolerance


def mac_region_bounds(mac, cfg=DEFAULT_CONFIG):
    return Region_Bounds(mac, cfg)


##############################################################################
# Path rates
##############################################################################

def chain_rates(mac, N, path, cfg=DEFAULT_CONFIG, synthesizer=None):
    """ R_s = 1/N sum over the positions of s of I(S_k; B^N | S^(k-1)) """
    assert isinstance(path, Chain_Path)
    if path.N != N or path.num_senders != mac.num_senders:
        raise Invariant_Error("path %s does not fit %u senders with"
                              " blocklength %u" % (path,
                                                   mac.num_senders, N))
    if synthesizer is None:
        synthesizer = Synthesizer(mac, N, cfg)

    rates = [0.0] * mac.num_senders
    for sc in synthesizer.path_channels(path.labels):
        rates[sc.index.sender] += synth_holevo(sc)
    return Rate_Point([r / N for r in rates])


def path_distance(mac, N, p, q, cfg=DEFAULT_CONFIG, synthesizer=None):
    """ |R_1(p) - R_1(q)|, the first-sender rate difference """
    if synthesizer is None:
        synthesizer = Synthesizer(mac, N, cfg)
    return abs(chain_rates(mac, N, p, cfg, synthesizer)[0] -
               chain_rates(mac, N, q, cfg, synthesizer)[0])


def dominant_face_sweep(mac, N, cfg=DEFAULT_CONFIG, synthesizer=None):
    """ (i, path, rates) for every member of 0^i 1^N 0^(N-i) """
    if mac.num_senders != 2:
        raise Invariant_Error("the sweep is defined for two senders")
    if synthesizer is None:
        synthesizer = Synthesizer(mac, N, cfg)
    return [(i, path, chain_rates(mac, N, path, cfg, synthesizer))
            for i, path in enumerate(nu_class(N))]


##############################################################################
# Approximation
##############################################################################

class Approximation:
    def __init__(self, N, path, rates, target, gap, guaranteed, i=None):
        self.N          = N
        self.path       = path
        self.rates      = rates
        self.target     = tuple(target)
        self.gap        = gap
        self.guaranteed = guaranteed
        self.i          = i

    def to_json(self):
        rv = {"N"          : self.N,
              "path"       : str(self.path),
              "rates"      : self.rates.to_json(),
              "target"     : list(self.target),
              "gap"        : self.gap,
              "guaranteed" : self.guaranteed}
        if self.i is not None:
            rv["i"] = self.i
        return rv


def feasible(mac, N, cfg):
    return mac.dim ** N <= cfg.max_dim and \
        2 ** (mac.num_senders * N - 1) <= cfg.max_enumeration


def choose_blocklength(mac, eps, cfg):
    """ Smallest power of two N >= 2 with N > 1/eps, or the largest
        feasible one if the caps do not allow it.
    """
    if not eps > 0:
        raise Invariant_Error("epsilon must be positive")
    if not feasible(mac, 2, cfg):
        raise Resource_Error("even blocklength 2 exceeds the resource caps")
    N = 2
    while N <= 1.0 / eps:
        N *= 2
    best = 2
    while best * 2 <= N and feasible(mac, best * 2, cfg):
        best *= 2
    return best, best == N


def approximate_rate_pair(mac, target, eps, cfg=DEFAULT_CONFIG, N=None):
    """ The member of 0^i 1^N 0^(N-i) whose first-sender rate is
        closest to the target; smallest i on ties.
    """
    if mac.num_senders != 2:
        raise Invariant_Error("rate pairs need a two-sender MAC")
    bounds = mac_region_bounds(mac, cfg)
    if len(target) != 2 or \
       not bounds.on_dominant_face(target, cfg.face_tolerance):
        raise Invariant_Error("target (%s) is not on the dominant face" %
                              ", ".join("%.9g" % t for t in target))

    if N is None:
        N, guaranteed = choose_blocklength(mac, eps, cfg)
    else:
        guaranteed = N > 1.0 / eps

    best = None
    for i, path, rates in dominant_face_sweep(mac, N, cfg):
        gap = abs(rates[0] - target[0])
        if best is None or gap < best.gap - 1e-12:
            best = Approximation(N, path, rates, target, gap,
                                 guaranteed and gap <= eps, i)
    return best


def approximate_rate_triple(mac, target, eps=None, cfg=DEFAULT_CONFIG,
                            N=None, synthesizer=None):
    """ The path of the three-sender class whose rates fall short of
        the target by the least (worst component), then deviate the
        least, then come first in label order.
    """
    if mac.num_senders != 3:
        raise Invariant_Error("rate triples need a three-sender MAC")
    if len(target) != 3:
        raise Invariant_Error("target must have three rates")
    if N is None:
        if eps is None:
            raise Invariant_Error("need either eps or N")
        N, guaranteed = choose_blocklength(mac, eps, cfg)
    else:
        guaranteed = eps is not None and N > 1.0 / eps
    if synthesizer is None:
        synthesizer = Synthesizer(mac, N, cfg)

    best = None
    best_key = None
    for path in mu_class(N):
        rates = chain_rates(mac, N, path, cfg, synthesizer)
        shortfall = max(0.0, max(t - r for t, r in zip(target, rates)))
        deviation = max(abs(t - r) for t, r in zip(target, rates))
        key = (round(shortfall, 12), round(deviation, 12), str(path))
        if best_key is None or key < best_key:
            best_key = key
            best = Approximation(N, path, rates, target, shortfall,
                                 guaranteed and shortfall <= eps)
    return best
