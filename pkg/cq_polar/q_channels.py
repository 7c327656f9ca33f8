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


# Classical-quantum channels, multiple access channels, interference
# channels and compound MACs. All inputs are binary; an input tuple
# (x_1, ..., x_k) is stored at the integer whose most significant bit
# is x_1, which is also the order of the "01"-style keys of channel
# documents.

import json
import itertools

import numpy as np

from cq_polar import q_core
from cq_polar.errors import (ICE, Location, Message_Handler,
                             Analysis_Error, Invariant_Error,
                             Dimension_Error)
from cq_polar.config import Config, DEFAULT_CONFIG


def input_tuples(num_senders):
    """ All binary input tuples in storage order. """
    return list(itertools.product((0, 1), repeat=num_senders))


def tuple_index(bits):
    rv = 0
    for bit in bits:
        rv = 2 * rv + int(bit)
    return rv


def tuple_key(bits):
    return "".join(str(int(bit)) for bit in bits)


class Channel_Root:
    """ Common part of everything mapping binary input tuples to
        density matrices of one shared dimension.
    """
    kind = None

    def __init__(self, num_senders, outputs, cfg=DEFAULT_CONFIG):
        assert isinstance(num_senders, int) and num_senders >= 1
        assert isinstance(cfg, Config)

        if isinstance(outputs, dict):
            outputs = [outputs[bits] for bits in input_tuples(num_senders)]
        if len(outputs) != 2 ** num_senders:
            raise Invariant_Error("%u senders need %u outputs, got %u" %
                                  (num_senders,
                                   2 ** num_senders,
                                   len(outputs)))

        self.num_senders = num_senders
        self.states = [
            q_core.as_density(rho, cfg,
                              "output for input %s" %
                              tuple_key(bits))
            for rho, bits in zip(outputs, input_tuples(num_senders))]

        dims = sorted(set(rho.dim for rho in self.states))
        if len(dims) != 1:
            raise Dimension_Error("outputs have different dimensions %s" %
                                  dims)
        self.dim      = dims[0]
        self.cfg      = cfg
        self.diagonal = all(rho.diagonal for rho in self.states)

        if self.diagonal:
            self.table = np.array([np.diagonal(rho.matrix).real
                                   for rho in self.states])
        else:
            self.table = np.array([rho.matrix for rho in self.states])
        self.table.flags.writeable = False
        # (2^k, d) for commuting outputs, (2^k, d, d) otherwise

    def __repr__(self):
        return "%s(senders=%u, dim=%u%s)" % (self.__class__.__name__,
                                              self.num_senders,
                                              self.dim,
                                              ", diagonal"
                                              if self.diagonal else "")

    def output(self, bits):
        assert len(bits) == self.num_senders
        return self.states[tuple_index(bits)]

    def operand(self, bits):
        return self.table[tuple_index(bits)]

    def grid(self):
        """ The output table with one axis of length 2 per sender. """
        return self.table.reshape((2,) * self.num_senders +
                                  self.table.shape[1:])

    def to_json(self):
        rv = {"kind"  : self.kind,
              "dim"   : self.dim,
              "states": {tuple_key(bits): self.output(bits).to_json()
                         for bits in input_tuples(self.num_senders)}}
        if self.num_senders > 1:
            rv["senders"] = self.num_senders
        return rv


class CQ_Channel(Channel_Root):
    """ Single sender: x -> rho_x """
    kind = "channel"

    def __init__(self, outputs, cfg=DEFAULT_CONFIG):
        super().__init__(1, outputs, cfg)


class CQ_MAC(Channel_Root):
    """ k >= 2 senders: (x_1, ..., x_k) -> rho_{x_1 ... x_k} """
    kind = "mac"

    def __init__(self, num_senders, outputs, cfg=DEFAULT_CONFIG):
        if num_senders < 2:
            raise Invariant_Error("a MAC needs at least two senders")
        super().__init__(num_senders, outputs, cfg)


class CQ_Interference_Channel(Channel_Root):
    """ Two senders, output on B1 (x) B2 with declared factor dims """
    kind = "interference"

    def __init__(self, outputs, dims, cfg=DEFAULT_CONFIG):
        super().__init__(2, outputs, cfg)
        dims = tuple(int(d) for d in dims)
        if len(dims) != 2 or min(dims) < 1:
            raise Dimension_Error("interference channel needs two factor"
                                  " dimensions, not %s" % (dims,))
        if dims[0] * dims[1] != self.dim:
            raise Dimension_Error("factorization %u x %u does not match"
                                  " output dimension %u" %
                                  (dims[0], dims[1], self.dim))
        self.dims = dims

    def to_json(self):
        rv = super().to_json()
        del rv["dim"]
        rv["dims"] = list(self.dims)
        return rv


class Compound_MAC:
    """ A set of MACs sharing the sender structure. The receiver knows
        which member is in use, the senders do not.
    """
    kind = "compound"

    def __init__(self, members):
        if not members:
            raise Invariant_Error("compound MAC has no members")
        for member in members:
            if not isinstance(member, CQ_MAC):
                raise Invariant_Error("compound members must be MACs")
        senders = set(member.num_senders for member in members)
        if len(senders) != 1:
            raise Invariant_Error("compound members have different numbers"
                                  " of senders %s" % sorted(senders))

        self.members     = list(members)
        self.num_senders = senders.pop()

    def __repr__(self):
        return "Compound_MAC(%s)" % ", ".join(repr(m) for m in self.members)

    def to_json(self):
        return {"kind"   : self.kind,
                "members": [member.to_json() for member in self.members]}


##############################################################################
# Derived channels
##############################################################################

def induced_macs(ic):
    """ The MACs seen by receiver 1 (trace out B2) and receiver 2
        (trace out B1).
    """
    assert isinstance(ic, CQ_Interference_Channel)

    first  = []
    second = []
    for rho in ic.states:
        first.append(q_core.partial_trace(rho, ic.dims, [0], ic.cfg))
        second.append(q_core.partial_trace(rho, ic.dims, [1], ic.cfg))

    return CQ_MAC(2, first, ic.cfg), CQ_MAC(2, second, ic.cfg)


def make_channel(num_senders, outputs, cfg):
    if num_senders == 1:
        return CQ_Channel(outputs, cfg)
    else:
        return CQ_MAC(num_senders, outputs, cfg)


def restrict_sender(mac, sender, value):
    """ Fix the input of one sender (0-based index). """
    assert isinstance(mac, Channel_Root)
    if not (isinstance(sender, int) and 0 <= sender < mac.num_senders):
        raise Invariant_Error("sender index %s out of range for %u senders"
                              % (sender, mac.num_senders))
    if value not in (0, 1):
        raise Invariant_Error("inputs are binary, cannot fix %s" % value)
    if mac.num_senders < 2:
        raise Invariant_Error("cannot restrict a single-user channel")

    outputs = [mac.output(bits[:sender] + (value,) + bits[sender:]).matrix
               for bits in input_tuples(mac.num_senders - 1)]
    return make_channel(mac.num_senders - 1, outputs, mac.cfg)


def average_sender(mac, sender):
    """ Uniformly average out the input of one sender. """
    assert isinstance(mac, Channel_Root)
    if not (isinstance(sender, int) and 0 <= sender < mac.num_senders):
        raise Invariant_Error("sender index %s out of range for %u senders"
                              % (sender, mac.num_senders))
    if mac.num_senders < 2:
        raise Invariant_Error("cannot average the only sender")

    outputs = [(mac.output(bits[:sender] + (0,) + bits[sender:]).matrix +
                mac.output(bits[:sender] + (1,) + bits[sender:]).matrix) / 2
               for bits in input_tuples(mac.num_senders - 1)]
    return make_channel(mac.num_senders - 1, outputs, mac.cfg)


def compose_inputs(mac, maps, arity):
    """ Build a MAC over sub-streams: maps[s] is (list of stream
        indices, lookup table from the stream bits to x_s).
    """
    assert isinstance(mac, Channel_Root)
    assert len(maps) == mac.num_senders

    outputs = []
    for streams in input_tuples(arity):
        x = tuple(table[tuple(streams[i] for i in indices)]
                  for indices, table in maps)
        outputs.append(mac.output(x).matrix)
    return make_channel(arity, outputs, mac.cfg)


##############################################################################
# Channel documents
##############################################################################

def parse_matrix(mh, loc, blob, cfg):
    """ A matrix is a list of rows; an entry is a number or [re, im].
        {"diag": [...]} is short-hand for a diagonal matrix.
    """
    if isinstance(blob, dict):
        if set(blob) != {"diag"} or not isinstance(blob["diag"], list):
            mh.error(loc, "expected a matrix or {\"diag\": [...]}")
        try:
            entries = np.diag(np.array(blob["diag"], dtype=float))
        except (TypeError, ValueError):
            mh.error(loc, "diagonal must be a list of numbers")

    else:
        if not isinstance(blob, list) or not blob or \
           not all(isinstance(row, list) for row in blob):
            mh.error(loc, "expected a matrix as a list of rows")
        if len(set(len(row) for row in blob)) != 1:
            mh.error(loc, "rows have different lengths")

        entries = np.zeros((len(blob), len(blob[0])), dtype=complex)
        for i, row in enumerate(blob):
            for j, entry in enumerate(row):
                if isinstance(entry, bool):
                    mh.error(loc.within("[%u][%u]" % (i, j)),
                             "expected a number or [re, im]")
                elif isinstance(entry, (int, float)):
                    entries[i, j] = entry
                elif isinstance(entry, list) and len(entry) == 2 and \
                     all(isinstance(x, (int, float)) and
                         not isinstance(x, bool) for x in entry):
                    entries[i, j] = complex(entry[0], entry[1])
                else:
                    mh.error(loc.within("[%u][%u]" % (i, j)),
                             "expected a number or [re, im]")

    try:
        return q_core.Density_Matrix(entries, cfg, "matrix")
    except Analysis_Error as err:
        mh.analysis_error(loc, err)


def parse_states(mh, loc, document, num_senders, dim, cfg):
    if "states" not in document or not isinstance(document["states"], dict):
        mh.error(loc, "states must be an object mapping inputs to matrices")
    states = document["states"]

    expected = [tuple_key(bits) for bits in input_tuples(num_senders)]
    for key in sorted(states):
        if key not in expected:
            if len(key) == num_senders and set(key) - {"0", "1"}:
                mh.error(loc.within('states["%s"]' % key),
                         "inputs are binary; non-binary alphabets are not"
                         " supported")
            mh.error(loc.within('states["%s"]' % key),
                     "unexpected input, expected one of %s" %
                     ", ".join(expected))
    for key in expected:
        if key not in states:
            mh.error(loc.within("states"), "missing input %s" % key)

    outputs = []
    for key in expected:
        state_loc = loc.within('states["%s"]' % key)
        rho = parse_matrix(mh, state_loc, states[key], cfg)
        if rho.dim != dim:
            mh.error(state_loc,
                     "dimension is %u, expected %u" % (rho.dim, dim))
        outputs.append(rho)
    return outputs


def get_positive_int(mh, loc, document, field):
    value = document.get(field)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        mh.error(loc.within(field), "expected a positive integer")
    return value


def parse_channel(mh, loc, document, cfg, allowed):
    if not isinstance(document, dict):
        mh.error(loc, "expected an object")
    kind = document.get("kind")
    if kind not in allowed:
        mh.error(loc.within("kind"),
                 "expected one of %s, found %s" % (", ".join(allowed),
                                                   json.dumps(kind)))

    try:
        if kind == "channel":
            if "senders" in document and document["senders"] != 1:
                mh.error(loc.within("senders"),
                         "a single-user channel has exactly one sender")
            dim = get_positive_int(mh, loc, document, "dim")
            return CQ_Channel(parse_states(mh, loc, document, 1, dim, cfg),
                              cfg)

        elif kind == "mac":
            senders = get_positive_int(mh, loc, document, "senders")
            if senders < 2:
                mh.error(loc.within("senders"),
                         "a MAC needs at least two senders")
            dim = get_positive_int(mh, loc, document, "dim")
            return CQ_MAC(senders,
                          parse_states(mh, loc, document, senders, dim, cfg),
                          cfg)

        elif kind == "interference":
            dims = document.get("dims")
            if not isinstance(dims, list) or len(dims) != 2 or \
               not all(isinstance(d, int) and not isinstance(d, bool) and
                       d >= 1 for d in dims):
                mh.error(loc.within("dims"),
                         "expected the factorization [d1, d2]")
            return CQ_Interference_Channel(
                parse_states(mh, loc, document, 2, dims[0] * dims[1], cfg),
                dims, cfg)

        elif kind == "compound":
            members = document.get("members")
            if not isinstance(members, list) or not members:
                mh.error(loc.within("members"),
                         "expected a non-empty list of MACs")
            if len(members) != 2:
                mh.error(loc.within("members"),
                         "compound MACs have exactly two members, found %u"
                         % len(members))
            return Compound_MAC(
                [parse_channel(mh, loc.within("members[%u]" % i),
                               member, cfg, ("mac",))
                 for i, member in enumerate(members)])

        else:
            raise ICE("unexpected channel kind %s" % kind)

    except Analysis_Error as err:
        mh.analysis_error(loc, err)


def channel_from_spec(mh, document, filename="<document>",
                      cfg=DEFAULT_CONFIG):
    """ Validate a parsed channel document. Problems are reported
        through mh, naming the offending entry, and raise Error.
    """
    assert isinstance(mh, Message_Handler)
    assert isinstance(cfg, Config)
    mh.register_document(filename)
    return parse_channel(mh, Location(filename), document, cfg,
                         ("channel", "mac", "interference", "compound"))


def load_channel(mh, filename, cfg=DEFAULT_CONFIG):
    assert isinstance(mh, Message_Handler)
    try:
        with open(filename, "r") as fd:
            document = json.load(fd)
    except OSError as err:
        mh.register_document(filename)
        mh.error(Location(filename), "cannot read: %s" % err.strerror)
    except ValueError as err:
        mh.register_document(filename)
        mh.error(Location(filename), "not a valid json document: %s" % err)
    return channel_from_spec(mh, document, filename, cfg)
