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


# The binary polar transform x = u G_N with G_N = B_N F^(x)n, and coset
# codes built on it. Indices are 0-based here; documents and reports
# add 1.

import numpy as np

from cq_polar.errors import Invariant_Error


def block_exponent(N):
    """ n with N = 2^n; raises Invariant_Error otherwise. """
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or \
       N < 1 or (N & (N - 1)) != 0:
        raise Invariant_Error("blocklength %s is not a power of two" % (N,))
    return int(N).bit_length() - 1


def bit_reversal(N):
    """ Permutation sending i to the value of its reversed n-bit
        binary representation.
    """
    n = block_exponent(N)
    rv = np.zeros(N, dtype=np.int64)
    for i in range(N):
        rv[i] = int(format(i, "0%ub" % n)[::-1], 2) if n else 0
    return rv


def apply_kernel_power(x):
    # x F^(x)n, in place, over the last axis
    N = x.shape[-1]
    lead = x.shape[:-1]
    half = N // 2
    while half >= 1:
        y = x.reshape(lead + (N // (2 * half), 2, half))
        y[..., 0, :] ^= y[..., 1, :]
        half //= 2
    return x


def polar_encode(u):
    """ u G_N over GF(2). u may carry leading batch axes. """
    u = np.asarray(u, dtype=np.uint8)
    if u.ndim == 0:
        raise Invariant_Error("cannot encode a scalar")
    if np.any(u > 1):
        raise Invariant_Error("polar_encode expects bits")
    N = u.shape[-1]
    perm = bit_reversal(N)
    x = np.ascontiguousarray(u[..., perm])
    return apply_kernel_power(x)


def generator_matrix(N):
    """ Dense G_N, only for small N. """
    return polar_encode(np.eye(N, dtype=np.uint8))


class Coset_Code_Spec:
    """ (N, K, A, u_{A^c}): information set A and frozen values on its
        complement.
    """
    def __init__(self, N, info, frozen=None):
        block_exponent(N)
        info = tuple(sorted(int(i) for i in info))
        if len(set(info)) != len(info):
            raise Invariant_Error("information set has repeated indices")
        if info and (info[0] < 0 or info[-1] >= N):
            raise Invariant_Error("information index out of range 1..%u" % N)
        complement = [i for i in range(N) if i not in set(info)]
        if frozen is None:
            frozen = {i: 0 for i in complement}
        frozen = {int(i): int(b) for i, b in frozen.items()}
        if sorted(frozen) != complement:
            raise Invariant_Error("frozen values must be given exactly on"
                                  " the complement of the information set")
        if set(frozen.values()) - {0, 1}:
            raise Invariant_Error("frozen values must be bits")

        self.N      = int(N)
        self.info   = info
        self.frozen = frozen

    @property
    def K(self):
        return len(self.info)

    def rate(self):
        return self.K / self.N

    def is_frozen(self, i):
        return i in self.frozen

    def assemble(self, info_bits):
        """ u^N from information bits on A and frozen values elsewhere """
        info_bits = np.asarray(info_bits, dtype=np.uint8)
        if info_bits.shape[-1] != self.K:
            raise Invariant_Error("expected %u information bits, got %u" %
                                  (self.K, info_bits.shape[-1]))
        u = np.zeros(info_bits.shape[:-1] + (self.N,), dtype=np.uint8)
        for i, b in self.frozen.items():
            u[..., i] = b
        u[..., list(self.info)] = info_bits
        return u

    def extract(self, u):
        return np.asarray(u, dtype=np.uint8)[..., list(self.info)]

    def to_json(self):
        return {"N"      : self.N,
                "info"   : [i + 1 for i in self.info],
                "frozen" : {str(i + 1): b
                            for i, b in sorted(self.frozen.items())}}


def coset_encode(info_bits, spec):
    assert isinstance(spec, Coset_Code_Spec)
    return polar_encode(spec.assemble(info_bits))


class Polar_Code_Spec:
    """ A complete (possibly multi-sender) polar code: blocklength,
        one coset code per sender, the decoding path and the optional
        alignment schedule.
    """
    def __init__(self, N, codes, path=None, schedule=None):
        block_exponent(N)
        for code in codes:
            assert isinstance(code, Coset_Code_Spec)
            if code.N != N:
                raise Invariant_Error("all senders must use blocklength %u"
                                      % N)
        self.N        = N
        self.codes    = list(codes)
        self.path     = path
        self.schedule = schedule

    @property
    def num_senders(self):
        return len(self.codes)

    def rates(self):
        return [code.rate() for code in self.codes]

    def to_json(self):
        rv = {"N"     : self.N,
              "codes" : [code.to_json() for code in self.codes]}
        if self.path is not None:
            rv["path"] = "".join(str(label) for label in self.path)
        if self.schedule is not None:
            rv["schedule"] = self.schedule.to_json()
        return rv
