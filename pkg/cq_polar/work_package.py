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


# Work packages are the unit of work handed to the worker pool: a
# chunk of synthesized indices, one path, or a range of Monte Carlo
# trials. Each carries its own forked message handler so messages can
# be integrated in submission order.

from cq_polar.errors import Message_Handler, Location
from cq_polar.config import Config


class Work_Package:
    def __init__(self, name, mh, cfg, options):
        assert isinstance(name, str)
        assert isinstance(mh, Message_Handler)
        assert isinstance(cfg, Config)

        self.name    = name
        self.mh      = mh.fork()
        self.cfg     = cfg
        self.options = options

    def location(self):
        return Location(self.name)


class Result:
    def __init__(self, wp, processed):
        assert isinstance(wp, Work_Package)
        assert isinstance(processed, bool)
        self.wp        = wp
        self.processed = processed


class Rows_Result(Result):
    """ Output rows (dicts) produced by one work package, plus optional
        trial records.
    """
    def __init__(self, wp, rows, records=None):
        super().__init__(wp, True)
        self.rows    = list(rows)
        self.records = list(records) if records else []


def chunks(total, parts):
    """ Split range(total) into at most parts contiguous (first, count)
        pieces of near-equal size.
    """
    assert total >= 0 and parts >= 1
    parts = min(parts, total) if total else 1
    rv = []
    first = 0
    for k in range(parts):
        count = total // parts + (1 if k < total % parts else 0)
        rv.append((first, count))
        first += count
    return rv
