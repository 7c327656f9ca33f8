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


# Parser for cq_polar.cfg files. The format is deliberately tiny: one
# "name: value" setting per line, and comments introduced by #.
#
#   # tighter caps for the CI machines
#   max_dim: 256
#   beta:    0.25

import re
import difflib
import os.path

from cq_polar.errors import ICE, Error, Location, Message_Handler
from cq_polar.config import (SETTINGS, Config,
                             Integer_Setting, Float_Setting)

CONFIG_FILENAME = "cq_polar.cfg"

RE_ITEM = re.compile(r"^(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*:\s*"
                     r"(?P<value>\S+)\s*$")
RE_INTEGER = re.compile(r"^[+-]?[0-9]+$")
RE_POWER = re.compile(r"^2\^(?P<exp>[0-9]+)$")
RE_FLOAT = re.compile(r"^[+-]?([0-9]+(\.[0-9]*)?|\.[0-9]+)([eE][+-]?[0-9]+)?$")


class Config_Parser:
    def __init__(self, mh, config_file):
        assert isinstance(mh, Message_Handler)
        assert isinstance(config_file, str)

        self.filename = config_file
        self.mh = mh

        self.mh.register_document(self.filename)
        with open(config_file, "r") as fd:
            self.lines = fd.read().splitlines()

    def parse_config_file(self, base=None):
        """ Returns a new Config, starting from base (or the defaults),
            with all settings of the file applied.
        """
        assert base is None or isinstance(base, Config)

        cfg = Config(base)
        has_errors = False
        seen = {}

        for line_no, raw_line in enumerate(self.lines, 1):
            line = raw_line.split("#", 1)[0].strip()
            if not line:
                continue

            try:
                name, value = self.parse_config_item(line_no, line)
                if name in seen:
                    self.mh.warning(
                        Location(self.filename, line=line_no),
                        "%s already set on line %u, this overrides it" %
                        (name, seen[name]))
                seen[name] = line_no
                cfg.set(name, value)
            except Error:
                has_errors = True

        if has_errors:
            self.mh.error(Location(self.filename),
                          "config file contains errors")

        return cfg

    def parse_config_item(self, line_no, line):
        loc = Location(self.filename, line=line_no)

        match = RE_ITEM.match(line)
        if match is None:
            self.mh.config_error(loc,
                                 "expected 'name: value', found '%s'" % line)

        name = match.group("name")
        if name not in SETTINGS:
            msg = "unknown setting %s" % name
            suggestions = difflib.get_close_matches(name,
                                                    list(SETTINGS),
                                                    n=1)
            if suggestions:
                msg += " (did you mean %s?)" % suggestions[0]
            self.mh.config_error(loc, msg)

        setting = SETTINGS[name]
        value = self.parse_value(loc, setting, match.group("value"))

        problem = setting.check(value)
        if problem:
            self.mh.config_error(loc, "%s %s" % (name, problem))

        return name, value

    def parse_value(self, loc, setting, text):
        if isinstance(setting, Integer_Setting):
            power = RE_POWER.match(text)
            if power:
                return 2 ** int(power.group("exp"))
            elif RE_INTEGER.match(text):
                return int(text)
            self.mh.config_error(loc,
                                 "expected an integer (or 2^k), found %s" %
                                 text)

        elif isinstance(setting, Float_Setting):
            if RE_FLOAT.match(text):
                return float(text)
            self.mh.config_error(loc,
                                 "expected a number, found %s" % text)

        else:
            raise ICE("unknown setting kind %s" %
                      setting.__class__.__name__)


def load_config(mh, filename, base=None):
    cfg_parser = Config_Parser(mh, os.path.relpath(filename))
    return cfg_parser.parse_config_file(base)


def find_config(directory="."):
    """ Returns the config file applying to the given directory, if any. """
    candidate = os.path.join(directory, CONFIG_FILENAME)
    if os.path.isfile(candidate):
        return candidate
    return None


def sanity_test(mh, filename, show_bt):
    # pylint: disable=import-outside-toplevel
    import traceback
    # pylint: enable=import-outside-toplevel

    try:
        cfg = load_config(mh, filename)
        cfg.dump()

    except Error:
        if show_bt:
            traceback.print_exc()

    except ICE as ice:
        if show_bt:
            traceback.print_exc()
        print("ICE:", ice.reason)


def cfg_parser_main():
    # pylint: disable=import-outside-toplevel
    from argparse import ArgumentParser
    # pylint: enable=import-outside-toplevel

    ap = ArgumentParser()
    ap.add_argument("file")
    ap.add_argument("--no-tb",
                    action="store_true",
                    default=False,
                    help="Do not show debug-style backtrace")
    options = ap.parse_args()

    mh = Message_Handler("debug")

    sanity_test(mh, options.file,
                not options.no_tb)

    mh.summary_and_exit()


if __name__ == "__main__":
    cfg_parser_main()
