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


# Han-Kobayashi region, frontier and end-to-end coding for two-user cq
# interference channels.

import json

from cq_polar import command_line
from cq_polar import work_package
from cq_polar import report
from cq_polar import errors
from cq_polar import hk_interference
from cq_polar.p_decoder import trial_rng, summarise

REGION_COLUMNS = ["receiver", "bound", "value"]
FRONTIER_COLUMNS = ["R1", "R2", "S1", "S2", "T1", "T2"]
DECODE_COLUMNS = ["receiver", "N", "levels", "trials", "errors", "p_hat",
                  "ci_low", "ci_high", "degenerate", "seed"]


class Frontier_WP(work_package.Work_Package):
    def __init__(self, mh, cfg, options, region):
        super().__init__("frontier", mh, cfg, options)
        self.region = region


class HK_Trial_WP(work_package.Work_Package):
    def __init__(self, mh, cfg, options, plan, first, count):
        super().__init__("trials %u..%u" % (first, first + count - 1),
                         mh, cfg, options)
        self.plan  = plan
        self.first = first
        self.count = count


class HK_Trial_Result(work_package.Result):
    def __init__(self, wp, records):
        super().__init__(wp, True)
        self.records = records


class CQP_HK(command_line.CQP_Back_End):
    def __init__(self, options, cfg, digest, region, plan):
        super().__init__("cqp_hk")
        self.options  = options
        self.cfg      = cfg
        self.digest   = digest
        self.region   = region
        self.plan     = plan
        self.frontier = []
        self.records  = ([], [])

    @classmethod
    def process_wp(cls, wp):
        if isinstance(wp, Frontier_WP):
            frontier = hk_interference.hk_achievable_pairs(
                wp.region, cfg=wp.cfg)
            return work_package.Rows_Result(
                wp, [point.to_json() for point in frontier])

        decoders = hk_interference.hk_decoders(wp.plan)
        transmitters = hk_interference.hk_transmitters(wp.plan)
        records = ([], [])
        seed = wp.options.seed
        for trial in range(wp.first, wp.first + wp.count):
            inputs = wp.plan.schedule.random_blocks(trial_rng(seed,
                                                              (trial, 0)))
            pair = hk_interference.hk_decode(wp.plan, inputs, seed,
                                             (trial, 1), decoders,
                                             transmitters)
            for r in (0, 1):
                records[r].append(pair[r])
        return HK_Trial_Result(wp, records)

    def process_result(self, result):
        if isinstance(result, HK_Trial_Result):
            for r in (0, 1):
                self.records[r].extend(result.records[r])
        else:
            self.frontier += result.rows

    def post_process(self):
        fd = report.open_output(self.options.out)
        writer = report.Report_Writer(fd, self.options.format, self.digest,
                                      self.options.seed
                                      if self.plan else None)

        if self.plan is None:
            writer.write_table(REGION_COLUMNS,
                               [{"receiver": r, "bound": b, "value": v}
                                for r, b, v in self.region.named()],
                               "region")
            if self.options.frontier:
                fd_frontier = open(self.options.frontier, "w")
                frontier_writer = report.Report_Writer(fd_frontier,
                                                       self.options.format,
                                                       self.digest)
                frontier_writer.write_table(FRONTIER_COLUMNS,
                                            self.frontier, "frontier")
                fd_frontier.close()
            else:
                writer.write_table(FRONTIER_COLUMNS, self.frontier,
                                   "frontier")

        else:
            rows = []
            for r in (0, 1):
                row = summarise(self.records[r], self.options.seed).to_json()
                row["receiver"] = "B%u" % (r + 1)
                row["N"] = self.plan.N
                row["levels"] = self.plan.schedule.m
                rows.append(row)
            writer.write_table(DECODE_COLUMNS, rows, "decode")

            if self.options.records:
                report.write_records(
                    self.options.records,
                    [record for r in (0, 1) for record in self.records[r]])
            if self.options.plan:
                with open(self.options.plan, "w") as fd_plan:
                    json.dump(report.plain(self.plan.to_json()), fd_plan,
                              indent=2, sort_keys=True)
                    fd_plan.write("\n")

        report.close_output(fd)


def main_handler(argv=None):
    clp = command_line.create_basic_clp(
        "Han-Kobayashi coding for classical-quantum interference channels")

    clp["code_options"].add_argument(
        "--split",
        metavar="FILE",
        default=None,
        help=("Rate splitting document with the maps x1 and x2 (default:"
              " no common parts)"))
    clp["code_options"].add_argument(
        "--rates",
        default=None,
        metavar="S1,S2,T1,T2",
        help="Build a code for these split rates and simulate it")
    clp["code_options"].add_argument(
        "--levels",
        type=int,
        default=1,
        help="Number of alignment levels of the common streams")
    clp["code_options"].add_argument(
        "--resolution",
        type=float,
        default=None,
        help="Override the grid resolution of the frontier sweep")

    sim_options = clp["ap"].add_argument_group("simulation options")
    sim_options.add_argument("--trials",
                             type=int,
                             default=100,
                             help="Number of blocks to simulate")
    sim_options.add_argument("--seed",
                             type=int,
                             default=0,
                             help="Seed of all random streams")

    clp["output_options"].add_argument(
        "--frontier",
        metavar="FILE",
        default=None,
        help="Write the frontier to FILE instead of after the region")
    clp["output_options"].add_argument(
        "--records",
        metavar="FILE",
        default=None,
        help="Write every trial record as a json line to FILE")
    clp["output_options"].add_argument(
        "--plan",
        metavar="FILE",
        default=None,
        help="Write the decode plan as json to FILE")

    options, mh, cfg = command_line.parse_args(
        clp, "hk", (("resolution", "grid_resolution"),), argv)
    ic = command_line.load_channel(mh, clp, options, cfg, ("interference",))
    try:
        if options.split is None:
            split = hk_interference.Rate_Split_Spec.trivial()
        else:
            split = hk_interference.load_split(mh, options.split)
    except errors.Error:
        mh.summary_and_exit()

    plan = None
    try:
        region = hk_interference.hk_bounds(ic, split, cfg)
        if options.rates is not None:
            N = command_line.blocklength(clp, options)
            values = command_line.parse_bits_list(clp, options.rates,
                                                  "--rates")
            if len(values) != 4:
                clp["ap"].error("--rates needs the four values S1,S2,T1,T2")
            if options.trials < 1:
                clp["ap"].error("--trials must be positive")
            target = dict(zip(("S1", "S2", "T1", "T2"), values))
            plan = hk_interference.build_hk_code(ic, split, target, N,
                                                 options.levels, cfg, region)
    except errors.Analysis_Error as err:
        try:
            mh.analysis_error(errors.Location(options.channel), err)
        except errors.Error:
            mh.summary_and_exit()

    digest = cfg.digest(command_line.result_arguments(options))
    back_end = CQP_HK(options, cfg, digest, region, plan)
    if plan is None:
        work_list = [Frontier_WP(mh, cfg, options, region)]
    else:
        work_list = [HK_Trial_WP(mh, cfg, options, plan, first, count)
                     for first, count in work_package.chunks(options.trials,
                                                             cfg.workers)]
    command_line.execute(mh, options, cfg, back_end, work_list)


def main():
    command_line.ice_handler(main_handler)


if __name__ == "__main__":
    main()
