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


# Han-Kobayashi coding for the two-user cq interference channel. Each
# sender splits its message into a private and a common stream:
#
#   stream 0  private_1  (rate S1)    x1 = x1(private_1, common_1)
#   stream 1  common_1   (rate T1)    x2 = x2(common_2, private_2)
#   stream 2  common_2   (rate T2)
#   stream 3  private_2  (rate S2)
#
# Receiver 1 decodes (private_1, common_1, common_2), receiver 2
# decodes (private_2, common_1, common_2); the other private stream is
# uniform noise. Each receiver therefore sees a three-sender MAC, and
# the two commons are aligned as a compound MAC whose members are the
# two receivers.

import json
import itertools

import numpy as np

from cq_polar import q_channels
from cq_polar.q_channels import CQ_Interference_Channel, input_tuples
from cq_polar.p_synthesis import Synthesizer, sender_fidelities, \
    rank_indices
from cq_polar.p_decoder import trial_rng, summarise, SC_Decoder
from cq_polar.mac_chains import mac_region_bounds, approximate_rate_triple
from cq_polar.compound_align import (partition, build_alignment,
                                     compound_decode, transmit_blocks)
from cq_polar.errors import (ICE, Location, Message_Handler,
                             Invariant_Error)
from cq_polar.config import DEFAULT_CONFIG

STREAMS = ("private_1", "common_1", "common_2", "private_2")
RATE_NAMES = ("S1", "T1", "T2", "S2")

# Streams decoded by each receiver, in the sender order of its MAC
RECEIVER_STREAMS = ((0, 1, 2), (3, 1, 2))


class Rate_Split_Spec:
    """ Symbol maps x1(private_1, common_1) and x2(common_2, private_2) """
    def __init__(self, x1, x2):
        for name, table in (("x1", x1), ("x2", x2)):
            if set(table) != set(input_tuples(2)):
                raise Invariant_Error("%s must be defined on all of"
                                      " {0,1}^2" % name)
            if set(table.values()) - {0, 1}:
                raise Invariant_Error("%s must map to bits" % name)
        self.x1 = {k: int(v) for k, v in x1.items()}
        self.x2 = {k: int(v) for k, v in x2.items()}

    @classmethod
    def trivial(cls):
        """ No common parts: x1 = private_1, x2 = private_2 """
        return cls({(a, b): a for a, b in input_tuples(2)},
                   {(a, b): b for a, b in input_tuples(2)})

    def to_json(self):
        return {"x1": {"%u%u" % k: v for k, v in sorted(self.x1.items())},
                "x2": {"%u%u" % k: v for k, v in sorted(self.x2.items())}}


def split_from_spec(mh, document, filename="<split>"):
    assert isinstance(mh, Message_Handler)
    mh.register_document(filename)
    loc = Location(filename)
    if not isinstance(document, dict) or set(document) != {"x1", "x2"}:
        mh.error(loc, "expected an object with the maps x1 and x2")

    tables = {}
    for name in ("x1", "x2"):
        table = document[name]
        if not isinstance(table, dict):
            mh.error(loc.within(name), "expected an object")
        for key in sorted(table):
            if key not in ("00", "01", "10", "11"):
                mh.error(loc.within('%s["%s"]' % (name, key)),
                         "keys must be two bits")
            if table[key] not in (0, 1) or isinstance(table[key], bool):
                mh.error(loc.within('%s["%s"]' % (name, key)),
                         "value must be 0 or 1")
        for key in ("00", "01", "10", "11"):
            if key not in table:
                mh.error(loc.within(name), "missing key %s" % key)
        tables[name] = {(int(k[0]), int(k[1])): v for k, v in table.items()}

    return Rate_Split_Spec(tables["x1"], tables["x2"])


def load_split(mh, filename):
    try:
        with open(filename, "r") as fd:
            document = json.load(fd)
    except OSError as err:
        mh.register_document(filename)
        mh.error(Location(filename), "cannot read: %s" % err.strerror)
    except ValueError as err:
        mh.register_document(filename)
        mh.error(Location(filename), "not a valid json document: %s" % err)
    return split_from_spec(mh, document, filename)


##############################################################################
# Induced MACs
##############################################################################

def stream_mac(ic, split, receiver, order=(0, 1, 2, 3)):
    """ The four-sender MAC from the streams (in the given order) to
        the output of one receiver.
    """
    assert isinstance(ic, CQ_Interference_Channel)
    assert isinstance(split, Rate_Split_Spec)
    if receiver not in (0, 1):
        raise ICE("receiver must be 0 or 1")
    mac = q_channels.induced_macs(ic)[receiver]
    position = {stream: j for j, stream in enumerate(order)}
    maps = [([position[0], position[1]], split.x1),
            ([position[2], position[3]], split.x2)]
    return q_channels.compose_inputs(mac, maps, 4)


def receiver_macs(ic, split):
    """ The three-sender MACs (private, common_1, common_2) of both
        receivers; the other private stream is averaged out.
    """
    first = stream_mac(ic, split, 0, (0, 1, 2, 3))
    second = stream_mac(ic, split, 1, (3, 1, 2, 0))
    return (q_channels.average_sender(first, 3),
            q_channels.average_sender(second, 3))


##############################################################################
# Region
##############################################################################

class HK_Region:
    """ Seven bounds per receiver: for every non-empty subset of the
        streams it decodes, the sum of their rates is at most the
        Holevo information of those streams given the others.
    """
    def __init__(self, bounds):
        self.bounds = list(bounds)
        # (receiver, names, value)

    def named(self):
        return [("B%u" % (receiver + 1), "+".join(names), value)
                for receiver, names, value in self.bounds]

    def limit(self, name):
        """ The tightest single-rate bound on name """
        return min(value for _, names, value in self.bounds
                   if names == (name,))

    def slacks(self, rates):
        """ rates maps S1, S2, T1, T2 to values (scalars or arrays) """
        return [value - sum(rates[n] for n in names)
                for _, names, value in self.bounds]

    def contains(self, rates, tolerance):
        if any(rates[n] < -tolerance for n in ("S1", "S2", "T1", "T2")):
            return False
        return all(slack >= -tolerance for slack in self.slacks(rates))

    def to_json(self):
        return [{"receiver": r, "bound": b, "value": v}
                for r, b, v in self.named()]


def hk_bounds(ic, split, cfg=DEFAULT_CONFIG):
    rv = []
    for receiver, mac in enumerate(receiver_macs(ic, split)):
        names = ("S%u" % (receiver + 1), "T1", "T2")
        region = mac_region_bounds(mac, cfg)
        for size in (1, 2, 3):
            for subset in itertools.combinations(range(3), size):
                rv.append((receiver,
                           tuple(names[s] for s in subset),
                           region.bound(subset)))
    return HK_Region(rv)


class Frontier_Point:
    def __init__(self, s1, s2, t1, t2):
        self.s1 = float(s1)
        self.s2 = float(s2)
        self.t1 = float(t1)
        self.t2 = float(t2)
        self.r1 = self.s1 + self.t1
        self.r2 = self.s2 + self.t2

    def __repr__(self):
        return "Frontier_Point(R1=%.6f, R2=%.6f)" % (self.r1, self.r2)

    def rates(self):
        return {"S1": self.s1, "S2": self.s2, "T1": self.t1, "T2": self.t2}

    def to_json(self):
        return {"R1": self.r1, "R2": self.r2,
                "S1": self.s1, "S2": self.s2, "T1": self.t1, "T2": self.t2}


def grid_axis(low, high, step):
    high = max(high, 0.0)
    low = max(low, 0.0)
    if high < low:
        return np.array([low])
    rv = np.arange(low, high, step)
    return np.unique(np.append(rv, high))


def feasible_points(region, axes, tolerance):
    s1, s2, t1, t2 = np.meshgrid(*axes, indexing="ij")
    rates = {"S1": s1, "S2": s2, "T1": t1, "T2": t2}
    mask = np.ones(s1.shape, dtype=bool)
    for slack in region.slacks(rates):
        mask &= slack >= -tolerance
    return np.stack([s1[mask], s2[mask], t1[mask], t2[mask]], axis=1)


def pareto(points):
    """ Points (S1, S2, T1, T2) whose (R1, R2) are not dominated """
    if len(points) == 0:
        return []
    r1 = np.round(points[:, 0] + points[:, 2], 12)
    r2 = np.round(points[:, 1] + points[:, 3], 12)
    order = np.lexsort((-r2, -r1))
    rv = []
    best = -np.inf
    for k in order:
        if r2[k] > best:
            best = r2[k]
            rv.append(points[k])
    return [Frontier_Point(*p) for p in reversed(rv)]


def hk_achievable_pairs(region, resolution=None, refinement=None,
                        cfg=DEFAULT_CONFIG):
    """ Pareto frontier of (S1+T1, S2+T2) over a grid of split rates,
        refined once around every frontier point.
    """
    assert isinstance(region, HK_Region)
    if resolution is None:
        resolution = cfg.grid_resolution
    if refinement is None:
        refinement = cfg.grid_refinement
    if not resolution > 0 or not refinement > 0:
        raise Invariant_Error("grid resolution must be positive")
    tolerance = cfg.tol_numeric

    limits = [region.limit(name) for name in ("S1", "S2", "T1", "T2")]
    axes = [grid_axis(0.0, limit, resolution) for limit in limits]
    points = feasible_points(region, axes, tolerance)
    frontier = pareto(points)

    if refinement < resolution:
        refined = [points]
        for point in frontier:
            values = (point.s1, point.s2, point.t1, point.t2)
            local = [grid_axis(v - resolution, min(v + resolution, limit),
                               refinement)
                     for v, limit in zip(values, limits)]
            refined.append(feasible_points(region, local, tolerance))
        frontier = pareto(np.concatenate(refined))

    for point in frontier:
        if not region.contains(point.rates(), tolerance):
            raise ICE("frontier point %s violates the region" % point)
    return frontier


##############################################################################
# Code construction and decoding
##############################################################################

class HK_Plan:
    """ Everything both receivers need: the chain path of each
        receiver's MAC and the shared alignment schedule of all four
        streams.
    """
    def __init__(self, ic, split, target, N, macs, paths, rates,
                 schedule, cfg):
        self.ic       = ic
        self.split    = split
        self.target   = dict(target)
        self.N        = N
        self.macs     = macs
        self.paths    = paths
        self.rates    = rates
        self.schedule = schedule
        self.cfg      = cfg

    def stream_rates(self):
        return {name: self.schedule.rate(s)
                for s, name in enumerate(RATE_NAMES)}

    def to_json(self):
        return {"N"        : self.N,
                "target"   : self.target,
                "split"    : self.split.to_json(),
                "receivers": [{"streams" : [STREAMS[s]
                                            for s in RECEIVER_STREAMS[r]],
                               "path"    : str(self.paths[r]),
                               "rates"   : self.rates[r].to_json()}
                              for r in (0, 1)],
                "code_rates": self.stream_rates(),
                "schedule" : self.schedule.to_json()}


def build_hk_code(ic, split, target, N, m, cfg=DEFAULT_CONFIG, region=None):
    """ target maps S1, S2, T1, T2 to the requested rates """
    if set(target) != {"S1", "S2", "T1", "T2"}:
        raise Invariant_Error("target needs the rates S1, S2, T1, T2")
    if region is None:
        region = hk_bounds(ic, split, cfg)
    if not region.contains(target, cfg.tol_numeric):
        raise Invariant_Error(
            "target (S1=%.6g, S2=%.6g, T1=%.6g, T2=%.6g) is outside the"
            " Han-Kobayashi region; slacks %s" %
            (target["S1"], target["S2"], target["T1"], target["T2"],
             ", ".join("%.3g" % s for s in region.slacks(target))))

    macs = receiver_macs(ic, split)
    paths = []
    rates = []
    good = []
    for receiver, mac in enumerate(macs):
        names = ("S%u" % (receiver + 1), "T1", "T2")
        triple = [max(0.0, target[n]) for n in names]
        synthesizer = Synthesizer(mac, N, cfg)
        best = approximate_rate_triple(mac, triple, None, cfg, N,
                                       synthesizer)
        if best.gap > 1.0 / N + 1e-6:
            raise Invariant_Error(
                "receiver %u: best path %s achieves (%s), short of the"
                " target by %.4g" % (receiver + 1, best.path,
                                     ", ".join("%.4g" % r
                                               for r in best.rates),
                                     best.gap))
        fidelities = sender_fidelities(synthesizer, list(best.path))
        good.append([rank_indices(fidelities[s],
                                  int(np.floor(triple[s] * N + 1e-9)))
                     for s in range(3)])
        paths.append(best.path)
        rates.append(best.rates)

    partitions = [partition(N, good[0][0], good[0][0]),
                  partition(N, good[0][1], good[1][1]),
                  partition(N, good[0][2], good[1][2]),
                  partition(N, good[1][0], good[1][0])]
    schedule = build_alignment(partitions, m, cfg, aligned=(1, 2))
    schedule.paths = paths

    return HK_Plan(ic, split, target, N, macs, paths, rates, schedule, cfg)


def hk_decoders(plan):
    return [SC_Decoder(plan.macs[r], plan.N, plan.paths[r], plan.cfg)
            for r in (0, 1)]


def hk_transmitters(plan):
    return [Synthesizer(stream_mac(plan.ic, plan.split, r), plan.N,
                        plan.cfg)
            for r in (0, 1)]


def hk_decode(plan, inputs, seed, stream=(), decoders=None,
              transmitters=None):
    """ Send the four streams of inputs (shape (4, blocks, N)) through
        the interference channel; each receiver decodes its three
        streams. Returns one Trial_Record per receiver.
    """
    assert isinstance(plan, HK_Plan)
    if decoders is None:
        decoders = hk_decoders(plan)
    if transmitters is None:
        transmitters = hk_transmitters(plan)
    inputs = np.asarray(inputs, dtype=np.uint8)

    return [compound_decode(plan.macs[r], r, plan.schedule, inputs, seed,
                            tuple(stream) + (r,), plan.cfg, decoders[r],
                            RECEIVER_STREAMS[r], plan.paths[r],
                            transmit_blocks(transmitters[r], inputs))
            for r in (0, 1)]


def hk_monte_carlo(plan, trials, seed):
    """ Per receiver error estimates; trial t draws its messages from
        (seed, t, 0) and receiver r measures with (seed, t, 1, r, block).
    """
    if trials < 1:
        raise Invariant_Error("need at least one trial")
    decoders = hk_decoders(plan)
    transmitters = hk_transmitters(plan)

    records = ([], [])
    for trial in range(trials):
        inputs = plan.schedule.random_blocks(trial_rng(seed, (trial, 0)))
        for r, record in enumerate(hk_decode(plan, inputs, seed,
                                             (trial, 1), decoders,
                                             transmitters)):
            records[r].append(record)

    return [summarise(records[r], seed) for r in (0, 1)], records
