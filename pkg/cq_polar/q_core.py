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


# Exact finite-dimensional density matrix computations. Everything is
# in bits (log base 2).
#
# Internally an operand is either a (d, d) complex matrix or, for
# states that are diagonal in the computational basis, the (d,) real
# vector of its diagonal. The classical channels used for checking
# everything against classical polar codes take the vector path.

import numpy as np
import scipy.linalg

from cq_polar.errors import Invariant_Error, Dimension_Error
from cq_polar.config import Config, DEFAULT_CONFIG


##############################################################################
# Operand helpers (no validation)
##############################################################################

def as_matrix(op):
    if op.ndim == 1:
        return np.diag(op.astype(complex))
    return op


def operand_dim(op):
    return op.shape[0]


def is_diagonal_matrix(matrix, tolerance):
    off = matrix - np.diag(np.diagonal(matrix))
    return float(np.max(np.abs(off), initial=0.0)) <= tolerance


def spectrum(op):
    if op.ndim == 1:
        return op.real
    return scipy.linalg.eigvalsh(op)


def entropy_of(op, floor=DEFAULT_CONFIG.eigen_floor):
    lam = spectrum(op)
    lam = lam[lam > floor]
    return max(0.0, float(-np.sum(lam * np.log2(lam))))


def shannon_entropy(weights, floor=DEFAULT_CONFIG.eigen_floor):
    p = np.asarray(weights, dtype=float)
    p = p[p > floor]
    return max(0.0, float(-np.sum(p * np.log2(p))))


def psd_sqrt(op):
    """ Square root of a PSD operand; negative eigenvalues from
        rounding are clipped to 0.
    """
    if op.ndim == 1:
        return np.sqrt(np.clip(op.real, 0.0, None))
    w, v = scipy.linalg.eigh(op)
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


def fidelity_of(op0, op1):
    if op0.ndim == 1 and op1.ndim == 1:
        return float(np.sum(np.sqrt(np.clip(op0.real, 0.0, None) *
                                    np.clip(op1.real, 0.0, None)))) ** 2
    prod = psd_sqrt(as_matrix(op0)) @ psd_sqrt(as_matrix(op1))
    return float(np.sum(scipy.linalg.svdvals(prod))) ** 2


def helstrom_of(op0, op1, floor=DEFAULT_CONFIG.eigen_floor):
    """ Projector onto the non-negative eigenspace of sqrt(op0) -
        sqrt(op1). Eigenvalues within floor of 0 count as
        non-negative. For vector operands the projector is returned as
        its 0/1 diagonal.
    """
    if op0.ndim == 1 and op1.ndim == 1:
        delta = psd_sqrt(op0) - psd_sqrt(op1)
        return (delta >= -floor).astype(float)
    delta = psd_sqrt(as_matrix(op0)) - psd_sqrt(as_matrix(op1))
    w, v = scipy.linalg.eigh(delta)
    positive = v[:, w >= -floor]
    return positive @ positive.conj().T


def trace_of(op):
    if op.ndim == 1:
        return float(np.sum(op.real))
    return float(np.trace(op).real)


def tensor(*ops):
    """ Kronecker product; stays a vector if every operand is one. """
    if all(op.ndim == 1 for op in ops):
        rv = np.ones(1)
        for op in ops:
            rv = np.kron(rv, op)
        return rv
    rv = np.ones((1, 1), dtype=complex)
    for op in ops:
        rv = np.kron(rv, as_matrix(op))
    return rv


##############################################################################
# Validated types
##############################################################################

class Density_Matrix:
    """ Hermitian, positive semi-definite, unit trace matrix.

    The constructor checks all three invariants against the
    tolerances of the given configuration and raises Invariant_Error
    naming the one that failed.
    """
    def __init__(self, entries, cfg=DEFAULT_CONFIG, what="density matrix"):
        assert isinstance(cfg, Config)

        entries = np.asarray(entries)
        if entries.ndim == 1:
            entries = np.diag(entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or \
           entries.shape[0] < 1:
            raise Dimension_Error("%s must be a square matrix, not of"
                                  " shape %s" % (what, entries.shape))

        matrix = entries.astype(complex)
        herm = float(np.max(np.abs(matrix - matrix.conj().T)))
        if herm > cfg.tol_hermitian:
            raise Invariant_Error("%s is not Hermitian (deviation %.3g,"
                                  " tolerance %g)" %
                                  (what, herm, cfg.tol_hermitian))
        matrix = (matrix + matrix.conj().T) / 2

        trace = float(np.trace(matrix).real)
        if abs(trace - 1.0) > cfg.tol_trace:
            raise Invariant_Error("%s has trace %.12g (expected 1 within %g)"
                                  % (what, trace, cfg.tol_trace))

        min_eig = float(np.min(scipy.linalg.eigvalsh(matrix)))
        if min_eig < -cfg.tol_psd:
            raise Invariant_Error("%s is not positive semi-definite"
                                  " (eigenvalue %.3g)" % (what, min_eig))

        self.dim    = matrix.shape[0]
        self.matrix = matrix
        self.matrix.flags.writeable = False
        self.diagonal = is_diagonal_matrix(matrix, cfg.tol_hermitian)

    def __repr__(self):
        return "Density_Matrix(dim=%u%s)" % (self.dim,
                                             ", diagonal"
                                             if self.diagonal else "")

    def operand(self):
        """ The internal operand: diagonal vector or full matrix. """
        if self.diagonal:
            return np.diagonal(self.matrix).real.copy()
        return self.matrix

    def to_json(self):
        return [[[float(x.real), float(x.imag)] for x in row]
                for row in self.matrix]


def as_density(rho, cfg=DEFAULT_CONFIG, what="density matrix"):
    if isinstance(rho, Density_Matrix):
        return rho
    return Density_Matrix(rho, cfg, what)


def require_same_dim(rho0, rho1):
    if rho0.dim != rho1.dim:
        raise Dimension_Error("dimension mismatch: %u vs %u" %
                              (rho0.dim, rho1.dim))


class Classical_Quantum_State:
    """ Block-diagonal state sum_x w_x |x><x| (x) rho_x.

    Labels are any hashable values; for conditional mutual
    information they are pairs (x, y) of the two classical registers.
    """
    def __init__(self, weights, conditionals, cfg=DEFAULT_CONFIG):
        assert isinstance(cfg, Config)
        if set(weights) != set(conditionals):
            raise Invariant_Error("weights and conditionals must have the"
                                  " same labels")
        if not weights:
            raise Invariant_Error("classical-quantum state has no labels")

        total = 0.0
        for label, weight in weights.items():
            if weight < 0:
                raise Invariant_Error("weight of %s is negative (%g)" %
                                      (label, weight))
            total += weight
        if abs(total - 1.0) > cfg.tol_trace:
            raise Invariant_Error("weights sum to %.12g, not 1" % total)

        self.labels       = sorted(weights)
        self.weights      = {label: float(weights[label])
                             for label in self.labels}
        self.conditionals = {
            label: as_density(conditionals[label], cfg,
                              "conditional state of %s" % (label,))
            for label in self.labels}

        dims = set(rho.dim for rho in self.conditionals.values())
        if len(dims) != 1:
            raise Dimension_Error("conditional states have different"
                                  " dimensions %s" % sorted(dims))
        self.dim = dims.pop()
        self.cfg = cfg

    def average(self, labels=None):
        """ The (unnormalised) mixture over the given labels. """
        if labels is None:
            labels = self.labels
        return sum(self.weights[label] * self.conditionals[label].matrix
                   for label in labels)


##############################################################################
# Operations
##############################################################################

def von_neumann_entropy(rho, cfg=DEFAULT_CONFIG):
    """ H(rho) = -tr rho log2 rho """
    rho = as_density(rho, cfg)
    return entropy_of(rho.operand(), cfg.eigen_floor)


def fidelity(rho0, rho1, cfg=DEFAULT_CONFIG):
    """ F(rho0, rho1) = || sqrt(rho0) sqrt(rho1) ||_1 ^ 2 """
    rho0 = as_density(rho0, cfg)
    rho1 = as_density(rho1, cfg)
    require_same_dim(rho0, rho1)
    return fidelity_of(rho0.operand(), rho1.operand())


def holevo_information(cq):
    """ H(sum_x w_x rho_x) - sum_x w_x H(rho_x) """
    assert isinstance(cq, Classical_Quantum_State)
    floor = cq.cfg.eigen_floor

    rv = entropy_of(cq.average(), floor)
    for label in cq.labels:
        rv -= cq.weights[label] * entropy_of(cq.conditionals[label].matrix,
                                             floor)
    return max(0.0, rv)


def conditional_mutual_information(state):
    """ I(X;B|Y) = H(XY) + H(YB) - H(Y) - H(XYB) for a state whose
        labels are pairs (x, y).
    """
    assert isinstance(state, Classical_Quantum_State)
    floor = state.cfg.eigen_floor

    for label in state.labels:
        if not (isinstance(label, tuple) and len(label) == 2):
            raise Invariant_Error("label %s is not a pair (x, y) of"
                                  " classical registers" % (label,))

    ys = sorted(set(y for _, y in state.labels))
    w_y = {y: sum(state.weights[(x, yy)]
                  for x, yy in state.labels if yy == y)
           for y in ys}

    h_xy = shannon_entropy(list(state.weights.values()), floor)
    h_y = shannon_entropy(list(w_y.values()), floor)

    # Block-diagonal joint states: H(sum_k p_k |k><k| (x) s_k) =
    # H(p) + sum_k p_k H(s_k)
    h_xyb = h_xy
    for label in state.labels:
        h_xyb += state.weights[label] * \
            entropy_of(state.conditionals[label].matrix, floor)

    h_yb = h_y
    for y in ys:
        if w_y[y] <= floor:
            continue
        sigma = state.average([label for label in state.labels
                               if label[1] == y]) / w_y[y]
        h_yb += w_y[y] * entropy_of(sigma, floor)

    return h_xy + h_yb - h_y - h_xyb


def helstrom_projector(rho0, rho1, cfg=DEFAULT_CONFIG):
    """ Projector onto the non-negative eigenspace of sqrt(rho0) -
        sqrt(rho1); the zero eigenspace is included so that rho0 =
        rho1 yields the identity.
    """
    rho0 = as_density(rho0, cfg)
    rho1 = as_density(rho1, cfg)
    require_same_dim(rho0, rho1)
    proj = helstrom_of(rho0.matrix, rho1.matrix, cfg.eigen_floor)
    return (proj + proj.conj().T) / 2


def partial_trace(rho, dims, keep, cfg=DEFAULT_CONFIG):
    """ Trace out every factor not in keep. The kept factors stay in
        their original order.
    """
    rho = as_density(rho, cfg)
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims):
        raise Dimension_Error("invalid factor dimensions %s" % dims)
    if int(np.prod(dims)) != rho.dim:
        raise Dimension_Error("factor dimensions %s do not multiply to %u"
                              % (dims, rho.dim))
    keep = sorted(set(keep))
    if not keep or keep[0] < 0 or keep[-1] >= len(dims):
        raise Dimension_Error("invalid factors to keep %s" % keep)

    t = rho.matrix.reshape(dims + dims)
    for axis in sorted(set(range(len(dims))) - set(keep), reverse=True):
        n = t.ndim // 2
        t = np.trace(t, axis1=axis, axis2=axis + n)
    d_keep = int(np.prod([dims[k] for k in keep]))

    return Density_Matrix(t.reshape(d_keep, d_keep), cfg,
                          "partial trace")
