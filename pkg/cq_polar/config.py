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


import json
import hashlib


##############################################################################
# Configuration class. This will be passed to every bit of code that
# computes anything.
##############################################################################

class Config:
    def __init__(self, other=None):
        if other is None:
            # Set up default configuration
            self.values = {name: SETTINGS[name].default
                           for name in SETTINGS}
            # All settings are default

        else:
            assert isinstance(other, Config)
            # Inherit from existing configuration
            self.values = dict(other.values)

    def __getattr__(self, name):
        # Settings are read as attributes, e.g. cfg.tol_trace
        values = self.__dict__.get("values")
        if values is None or name not in values:
            raise AttributeError(name)
        return values[name]

    def __getstate__(self):
        return {"values": self.values}

    def __setstate__(self, state):
        self.values = state["values"]

    def set(self, name, value):
        """ Changes a setting, which must be known and within limits. """
        assert name in SETTINGS, "unknown setting %s" % name
        setting = SETTINGS[name]
        problem = setting.check(value)
        assert problem is None, problem
        self.values[name] = setting.convert(value)

    def to_json(self):
        return {name: self.values[name] for name in sorted(SETTINGS)}

    def digest(self, extra=None):
        """ sha256 of the canonical json of this configuration and
            optional extra items (usually the command-line arguments
            that influence the result). Execution settings do not change
            results and are left out.
        """
        blob = {"config": {name: value
                           for name, value in self.to_json().items()
                           if SETTINGS[name].group != "Execution"}}
        if extra:
            blob["arguments"] = extra
        text = json.dumps(blob, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def dump(self, indent=0):
        items = ["CQ_POLAR Configuration object"]
        maxlen = max(len(item) for item in SETTINGS)
        for group in SETTING_GROUPS:
            items.append(group)
            for name in sorted(SETTINGS):
                if SETTINGS[name].group == group:
                    items.append("  %-*s = %s" % (maxlen,
                                                  name,
                                                  self.values[name]))

        for i, item in enumerate(items):
            if i == 0:
                print("%s%s" % (" " * indent, item))
            else:
                print("%s| %s" % (" " * indent, item))


##############################################################################
# Internal classes describing the kind of settings you can put in a
# config file.
##############################################################################

class Setting:
    def __init__(self, group, description, default):
        assert group in SETTING_GROUPS
        assert isinstance(description, str)
        self.group       = group
        self.description = description
        self.default     = default

    def check(self, value):
        """ Returns None, or a string describing why value is invalid. """
        raise NotImplementedError

    def convert(self, value):
        return value


class Integer_Setting(Setting):
    def __init__(self, group, description,
                 lower_limit=None, upper_limit=None, default=None):
        super().__init__(group, description, default)
        assert isinstance(lower_limit, int) or lower_limit is None
        assert isinstance(upper_limit, int) or upper_limit is None
        assert isinstance(default, int)
        assert lower_limit is None or upper_limit is None or \
            lower_limit <= upper_limit
        assert lower_limit is None or default >= lower_limit
        assert upper_limit is None or default <= upper_limit

        self.lower_limit = lower_limit
        self.upper_limit = upper_limit

    def check(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            return "expected an integer"
        if self.lower_limit is not None and value < self.lower_limit:
            return "must be at least %u" % self.lower_limit
        if self.upper_limit is not None and value > self.upper_limit:
            return "must be at most %u" % self.upper_limit
        return None


class Float_Setting(Setting):
    def __init__(self, group, description,
                 lower_limit=None, upper_limit=None, default=None,
                 strict=False):
        super().__init__(group, description, default)
        assert isinstance(default, float)
        self.lower_limit = lower_limit
        self.upper_limit = upper_limit
        self.strict      = strict
        # strict limits are exclusive

    def check(self, value):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return "expected a number"
        if value != value:
            return "expected a number, not NaN"
        if self.lower_limit is not None:
            if self.strict and value <= self.lower_limit:
                return "must be greater than %g" % self.lower_limit
            elif value < self.lower_limit:
                return "must be at least %g" % self.lower_limit
        if self.upper_limit is not None:
            if self.strict and value >= self.upper_limit:
                return "must be less than %g" % self.upper_limit
            elif value > self.upper_limit:
                return "must be at most %g" % self.upper_limit
        return None

    def convert(self, value):
        return float(value)


##############################################################################
# The actual settings
##############################################################################

SETTING_GROUPS = ("Tolerances", "Resources", "Decoder", "Construction",
                  "Execution")

SETTINGS = {
    "tol_hermitian" : Float_Setting(
        "Tolerances",
        "Largest allowed |a_ij - conj(a_ji)| of a density matrix.",
        lower_limit = 0.0, default = 1e-9),

    "tol_trace" : Float_Setting(
        "Tolerances",
        "Largest allowed deviation of a trace (or prior) from 1.",
        lower_limit = 0.0, default = 1e-9),

    "tol_psd" : Float_Setting(
        "Tolerances",
        "Most negative eigenvalue accepted for a density matrix.",
        lower_limit = 0.0, default = 1e-9),

    "tol_numeric" : Float_Setting(
        "Tolerances",
        "Slack for derived identities (symmetry, non-negativity).",
        lower_limit = 0.0, default = 1e-7),

    "eigen_floor" : Float_Setting(
        "Tolerances",
        "Eigenvalues below this are treated as 0 in entropies.",
        lower_limit = 0.0, default = 1e-12),

    "face_tolerance" : Float_Setting(
        "Tolerances",
        "Tolerance of the dominant face membership test.",
        lower_limit = 0.0, default = 1e-7),

    "max_dim" : Integer_Setting(
        "Resources",
        "Largest output dimension d^N of a synthesized channel.",
        lower_limit = 1, default = 4096),

    "max_enumeration" : Integer_Setting(
        "Resources",
        "Largest number of classical contexts enumerated at once.",
        lower_limit = 1, default = 2 ** 20),

    "max_levels" : Integer_Setting(
        "Resources",
        "Largest number of alignment levels.",
        lower_limit = 1, upper_limit = 16, default = 6),

    "projector_cache" : Integer_Setting(
        "Resources",
        "Number of decoder projectors kept per decoder.",
        lower_limit = 0, default = 4096),

    "renormalise_threshold" : Float_Setting(
        "Decoder",
        "Post-measurement states are renormalised below this trace.",
        lower_limit = 0.0, default = 1e-12),

    "degenerate_threshold" : Float_Setting(
        "Decoder",
        "Total measurement probability treated as zero.",
        lower_limit = 0.0, default = 1e-300),

    "beta" : Float_Setting(
        "Construction",
        "Exponent of the good-index threshold 2^(-N^beta).",
        lower_limit = 0.0, upper_limit = 0.5, default = 0.3,
        strict = True),

    "grid_resolution" : Float_Setting(
        "Construction",
        "Step of the rate-splitting grid sweep (bits).",
        lower_limit = 0.0, default = 0.05, strict = True),

    "grid_refinement" : Float_Setting(
        "Construction",
        "Step of the refinement sweep near the frontier (bits).",
        lower_limit = 0.0, default = 0.01, strict = True),

    "workers" : Integer_Setting(
        "Execution",
        "Number of worker processes (1 resolves everything in-process).",
        lower_limit = 1, default = 1),
}

DEFAULT_CONFIG = Config()
