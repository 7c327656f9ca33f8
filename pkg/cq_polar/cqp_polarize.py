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


# Polarization table of a single-user cq channel: the Holevo
# information and root fidelity of every synthesized channel.

from cq_polar import command_line
from cq_polar import work_package
from cq_polar import report
from cq_polar.p_synthesis import (Synthesizer, synth_holevo, synth_fidelity,
                                  rank_indices)

COLUMNS = ["i", "holevo", "sqrt_fidelity"]


class Index_WP(work_package.Work_Package):
    def __init__(self, mh, cfg, options, channel, N, first, count):
        super().__init__("indices %u..%u" % (first + 1, first + count),
                         mh, cfg, options)
        self.channel = channel
        self.N       = N
        self.first   = first
        self.count   = count


class CQP_Polarize(command_line.CQP_Back_End):
    def __init__(self, options, cfg, N, digest):
        super().__init__("cqp_polarize")
        self.options = options
        self.cfg     = cfg
        self.N       = N
        self.digest  = digest
        self.rows    = []

    @classmethod
    def process_wp(cls, wp):
        synthesizer = Synthesizer(wp.channel, wp.N, wp.cfg)
        rows = []
        for i in range(wp.first, wp.first + wp.count):
            sc = synthesizer.split_channel(i)
            fidelity = synth_fidelity(sc)
            rows.append({"i"             : i + 1,
                         "holevo"        : synth_holevo(sc),
                         "sqrt_fidelity" : fidelity ** 0.5,
                         "fidelity"      : fidelity})
        return work_package.Rows_Result(wp, rows)

    def process_result(self, result):
        self.rows += result.rows

    def post_process(self):
        columns = list(COLUMNS)
        if self.options.K is not None:
            info = set(rank_indices([row["fidelity"] for row in self.rows],
                                    self.options.K))
            for row in self.rows:
                row["info"] = (row["i"] - 1) in info
            columns.append("info")

        fd = report.open_output(self.options.out)
        writer = report.Report_Writer(fd, self.options.format, self.digest)
        writer.write_table(columns, self.rows)
        report.close_output(fd)


def main_handler(argv=None):
    clp = command_line.create_basic_clp(
        "Polarization of a classical-quantum channel")

    clp["code_options"].add_argument(
        "--K",
        type=int,
        default=None,
        help=("Also mark the K indices chosen by the polar coding rule"))

    options, mh, cfg = command_line.parse_args(clp, "polarize", argv=argv)
    N = command_line.blocklength(clp, options)
    if options.K is not None and not 0 <= options.K <= N:
        clp["ap"].error("--K must be between 0 and %u" % N)

    channel = command_line.load_channel(mh, clp, options, cfg, ("channel",))

    digest = cfg.digest(command_line.result_arguments(options))
    back_end = CQP_Polarize(options, cfg, N, digest)
    work_list = [Index_WP(mh, cfg, options, channel, N, first, count)
                 for first, count in work_package.chunks(N, cfg.workers)]
    command_line.execute(mh, options, cfg, back_end, work_list)


def main():
    command_line.ice_handler(main_handler)


if __name__ == "__main__":
    main()
