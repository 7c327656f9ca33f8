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


# Monte Carlo block error rates of polar codes under the quantum
# successive cancellation decoder, for single-user channels, MACs and
# aligned codes on compound MACs.

import json

from cq_polar import command_line
from cq_polar import work_package
from cq_polar import report
from cq_polar import errors
from cq_polar.p_synthesis import construct_code, construct_mac_code
from cq_polar.p_transform import Polar_Code_Spec
from cq_polar.p_decoder import run_trials, summarise
from cq_polar.compound_align import (construct_compound_code,
                                     run_compound_trials)
from cq_polar.mac_chains import Chain_Path

COLUMNS = ["N", "K", "trials", "errors", "p_hat", "ci_low", "ci_high",
           "degenerate", "seed"]


class Trial_WP(work_package.Work_Package):
    def __init__(self, mh, cfg, options, channel, code, first, count,
                 member=None):
        super().__init__("trials %u..%u" % (first, first + count - 1),
                         mh, cfg, options)
        self.channel = channel
        self.code    = code
        self.first   = first
        self.count   = count
        self.member  = member


class CQP_Decode(command_line.CQP_Back_End):
    def __init__(self, options, cfg, digest, code):
        super().__init__("cqp_decode")
        self.options = options
        self.cfg     = cfg
        self.digest  = digest
        self.code    = code
        self.records = []

    @classmethod
    def process_wp(cls, wp):
        if wp.member is None:
            records = run_trials(wp.channel, wp.code, wp.options.seed,
                                 wp.first, wp.count, wp.cfg,
                                 wp.options.genie)
        else:
            records = run_compound_trials(wp.channel, wp.member, wp.code,
                                          wp.options.seed, wp.first,
                                          wp.count, wp.cfg)
        return work_package.Rows_Result(wp, [], records)

    def process_result(self, result):
        self.records += result.records

    def post_process(self):
        estimate = summarise(self.records, self.options.seed)
        row = estimate.to_json()
        row["N"] = self.code.N
        if self.code.schedule is None:
            row["K"] = ";".join(str(c.K) for c in self.code.codes)
        else:
            schedule = self.code.schedule
            row["K"] = ";".join(str(len(schedule.info_positions(s)))
                                for s in range(schedule.num_streams))
        columns = list(COLUMNS)
        if self.options.member is not None:
            row["member"] = self.options.member
            row["levels"] = self.options.levels
            columns += ["member", "levels"]

        fd = report.open_output(self.options.out)
        writer = report.Report_Writer(fd, self.options.format, self.digest,
                                      self.options.seed)
        writer.write_table(columns, [row])
        report.close_output(fd)

        if self.options.records:
            report.write_records(self.options.records, self.records)
        if self.options.plan:
            with open(self.options.plan, "w") as fd:
                json.dump(report.plain(self.code.to_json()), fd,
                          indent=2, sort_keys=True)
                fd.write("\n")


def default_path(N, num_senders):
    return Chain_Path([s for s in range(num_senders) for _ in range(N)],
                      num_senders)


def main_handler(argv=None):
    clp = command_line.create_basic_clp(
        "Block error rate of cq polar codes under quantum successive"
        " cancellation decoding")

    clp["code_options"].add_argument(
        "--K",
        default=None,
        help="Information bits (per sender, comma separated)")
    clp["code_options"].add_argument(
        "--path",
        default=None,
        help="Decoding path for MACs (default: senders one after another)")
    clp["code_options"].add_argument(
        "--member",
        type=int,
        choices=[1, 2],
        default=None,
        help="Compound MACs: the member in use (default 1)")
    clp["code_options"].add_argument(
        "--levels",
        type=int,
        default=None,
        help="Compound MACs: number of alignment levels (default 1)")
    clp["code_options"].add_argument(
        "--beta",
        type=float,
        default=None,
        help="Override the good-index threshold exponent")

    sim_options = clp["ap"].add_argument_group("simulation options")
    sim_options.add_argument("--trials",
                             type=int,
                             default=100,
                             help="Number of blocks to simulate")
    sim_options.add_argument("--seed",
                             type=int,
                             default=0,
                             help="Seed of all random streams")
    sim_options.add_argument("--genie",
                             action="store_true",
                             default=False,
                             help="Condition every step on the true past")

    clp["output_options"].add_argument(
        "--records",
        metavar="FILE",
        default=None,
        help="Write every trial record as a json line to FILE")
    clp["output_options"].add_argument(
        "--plan",
        metavar="FILE",
        default=None,
        help="Write the constructed code as json to FILE")

    options, mh, cfg = command_line.parse_args(clp, "decode",
                                               (("beta", "beta"),),
                                               argv)
    N = command_line.blocklength(clp, options)
    if options.trials < 1:
        clp["ap"].error("--trials must be positive")
    if options.seed < 0:
        clp["ap"].error("--seed must not be negative")

    channel = command_line.load_channel(mh, clp, options, cfg,
                                        ("channel", "mac", "compound"))

    if channel.kind == "compound":
        if options.genie:
            clp["ap"].error("--genie is not supported for compound MACs")
        if options.K is not None:
            clp["ap"].error("compound codes choose their information sets"
                            " by alignment; --K is not accepted")
        if options.member is None:
            options.member = 1
        if options.levels is None:
            options.levels = 1
    else:
        if options.member is not None or options.levels is not None:
            clp["ap"].error("--member and --levels need a compound MAC")
        if options.K is None:
            clp["ap"].error("--K is required")
        Ks = command_line.parse_bits_list(clp, options.K, "--K", int)
        if len(Ks) != channel.num_senders:
            clp["ap"].error("--K needs %u values" % channel.num_senders)
        if any(not 0 <= K <= N for K in Ks):
            clp["ap"].error("--K values must be between 0 and %u" % N)

    path = None
    if channel.num_senders > 1:
        if options.path is None:
            path = default_path(N, channel.num_senders)
        else:
            try:
                path = Chain_Path.from_string(options.path,
                                              channel.num_senders)
            except errors.Analysis_Error as err:
                clp["ap"].error("--path: %s" % err.message)
            if path.N != N:
                clp["ap"].error("--path must contain every sender %u times"
                                % N)

    try:
        if channel.kind == "channel":
            code = Polar_Code_Spec(N, [construct_code(channel, N, Ks[0],
                                                      cfg)])
        elif channel.kind == "mac":
            code = construct_mac_code(channel, N, path, Ks, cfg)
        else:
            code = construct_compound_code(channel, N, [path, path],
                                           options.levels, cfg)
    except errors.Analysis_Error as err:
        try:
            mh.analysis_error(errors.Location(options.channel), err)
        except errors.Error:
            mh.summary_and_exit()

    member = None if options.member is None else options.member - 1
    digest = cfg.digest(command_line.result_arguments(options))
    back_end = CQP_Decode(options, cfg, digest, code)
    work_list = [Trial_WP(mh, cfg, options, channel, code, first, count,
                          member)
                 for first, count in work_package.chunks(options.trials,
                                                         cfg.workers)]
    command_line.execute(mh, options, cfg, back_end, work_list)


def main():
    command_line.ice_handler(main_handler)


if __name__ == "__main__":
    main()
