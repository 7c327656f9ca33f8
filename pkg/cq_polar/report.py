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


# Tabular output. Every output starts with a header naming the tool
# version, the sha256 of the effective configuration and arguments,
# and the seed: "#" comment lines for CSV, a first record with
# "header": true for JSON lines.

import sys
import csv
import json

import numpy as np

from cq_polar.version import FULL_NAME


def format_value(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    elif isinstance(value, (int, np.integer)):
        return "%d" % value
    elif isinstance(value, (float, np.floating)):
        return "%.17g" % value
    elif value is None:
        return ""
    else:
        return str(value)


def plain(value):
    if isinstance(value, np.bool_):
        return bool(value)
    elif isinstance(value, np.integer):
        return int(value)
    elif isinstance(value, np.floating):
        return float(value)
    elif isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    elif isinstance(value, dict):
        return {k: plain(v) for k, v in value.items()}
    return value


class Report_Writer:
    def __init__(self, fd, fmt, digest, seed=None):
        assert fmt in ("csv", "jsonl")
        self.fd      = fd
        self.fmt     = fmt
        self.digest  = digest
        self.seed    = seed
        self.columns = None

    def header(self, table=None):
        if self.fmt == "csv":
            self.fd.write("# tool: %s\n" % FULL_NAME)
            self.fd.write("# config: %s\n" % self.digest)
            self.fd.write("# seed: %s\n" %
                          ("none" if self.seed is None else self.seed))
            if table:
                self.fd.write("# table: %s\n" % table)
        else:
            blob = {"header" : True,
                    "tool"   : FULL_NAME,
                    "config" : self.digest,
                    "seed"   : self.seed}
            if table:
                blob["table"] = table
            self.fd.write(json.dumps(blob, sort_keys=True) + "\n")
        self.columns = None

    def write_rows(self, columns, rows):
        if self.fmt == "csv":
            writer = csv.writer(self.fd, lineterminator="\n")
            if self.columns != columns:
                writer.writerow(columns)
                self.columns = columns
            for row in rows:
                writer.writerow([format_value(row.get(c)) for c in columns])
        else:
            for row in rows:
                self.fd.write(json.dumps({c: plain(row.get(c))
                                          for c in columns},
                                         sort_keys=True) + "\n")

    def write_table(self, columns, rows, table=None):
        self.header(table)
        self.write_rows(columns, rows)


def open_output(filename):
    if filename is None:
        return sys.stdout
    return open(filename, "w")


def close_output(fd):
    if fd is not sys.stdout:
        fd.close()
    else:
        fd.flush()


def write_records(filename, records):
    """ Trial records as JSON lines """
    with open(filename, "w") as fd:
        for record in records:
            fd.write(json.dumps(plain(record.to_json()),
                                sort_keys=True) + "\n")
