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


# Rates of monotone chain paths on a two- or three-sender cq MAC:
# dominant face sweeps, single paths, path approximation of a target
# rate point, and the region bounds.

from cq_polar import command_line
from cq_polar import work_package
from cq_polar import report
from cq_polar import errors
from cq_polar import mac_chains
from cq_polar.p_synthesis import Synthesizer


def rate_columns(num_senders):
    return (["N", "path"] +
            ["R%u" % (s + 1) for s in range(num_senders)] +
            ["sum", "sum_bound", "sum_gap"])


def rate_row(N, path, rates, sum_bound):
    row = {"N"         : N,
           "path"      : str(path),
           "sum"       : rates.total(),
           "sum_bound" : sum_bound,
           "sum_gap"   : abs(rates.total() - sum_bound)}
    for s, rate in enumerate(rates.rates):
        row["R%u" % (s + 1)] = rate
    return row


class Path_WP(work_package.Work_Package):
    def __init__(self, mh, cfg, options, mac, N, paths, sum_bound):
        super().__init__("paths %s..%s" % (paths[0], paths[-1]),
                         mh, cfg, options)
        self.mac       = mac
        self.N         = N
        self.paths     = paths
        self.sum_bound = sum_bound


class Approximation_WP(work_package.Work_Package):
    def __init__(self, mh, cfg, options, mac, N, target, epsilon,
                 sum_bound):
        super().__init__("approximation", mh, cfg, options)
        self.mac       = mac
        self.N         = N
        self.target    = target
        self.epsilon   = epsilon
        self.sum_bound = sum_bound


class CQP_MAC(command_line.CQP_Back_End):
    def __init__(self, options, cfg, digest, columns):
        super().__init__("cqp_mac")
        self.options = options
        self.cfg     = cfg
        self.digest  = digest
        self.columns = columns
        self.rows    = []

    @classmethod
    def process_wp(cls, wp):
        if isinstance(wp, Path_WP):
            synthesizer = Synthesizer(wp.mac, wp.N, wp.cfg)
            rows = [rate_row(wp.N, path,
                             mac_chains.chain_rates(wp.mac, wp.N, path,
                                                    wp.cfg, synthesizer),
                             wp.sum_bound)
                    for path in wp.paths]

        else:
            if wp.mac.num_senders == 2:
                best = mac_chains.approximate_rate_pair(wp.mac, wp.target,
                                                        wp.epsilon, wp.cfg,
                                                        wp.N)
            else:
                best = mac_chains.approximate_rate_triple(wp.mac, wp.target,
                                                          wp.epsilon, wp.cfg,
                                                          wp.N)
            row = rate_row(best.N, best.path, best.rates, wp.sum_bound)
            row["gap"] = best.gap
            row["guaranteed"] = best.guaranteed
            if best.i is not None:
                row["i"] = best.i
            for s, t in enumerate(best.target):
                row["target_%u" % (s + 1)] = t
            rows = [row]

        return work_package.Rows_Result(wp, rows)

    def process_result(self, result):
        self.rows += result.rows

    def post_process(self):
        fd = report.open_output(self.options.out)
        writer = report.Report_Writer(fd, self.options.format, self.digest)
        writer.write_table(self.columns, self.rows)
        report.close_output(fd)


def main_handler(argv=None):
    clp = command_line.create_basic_clp(
        "Monotone chain rule rates of a classical-quantum MAC")

    clp["code_options"].add_argument(
        "--path",
        default=None,
        help="Evaluate only this path, e.g. 0110")
    clp["code_options"].add_argument(
        "--rates",
        default=None,
        metavar="R1,R2[,R3]",
        help="Find the path of the approximation class closest to these rates")
    clp["code_options"].add_argument(
        "--epsilon",
        type=float,
        default=None,
        help="Approximation accuracy; picks N > 1/epsilon unless N is given")
    clp["code_options"].add_argument(
        "--bounds",
        action="store_true",
        default=False,
        help="Only emit the rate region bounds")

    options, mh, cfg = command_line.parse_args(clp, "mac", argv=argv)
    if options.rates is not None and options.path is not None:
        clp["ap"].error("--rates and --path are mutually exclusive")
    if options.rates is not None:
        N = command_line.blocklength(clp, options,
                                     required=options.epsilon is None)
        target = command_line.parse_bits_list(clp, options.rates, "--rates")
        epsilon = options.epsilon
        if epsilon is None:
            epsilon = 1.0 / N
        elif not epsilon > 0:
            clp["ap"].error("--epsilon must be positive")
    elif not options.bounds:
        N = command_line.blocklength(clp, options)

    mac = command_line.load_channel(mh, clp, options, cfg, ("mac",))
    if mac.num_senders not in (2, 3):
        clp["ap"].error("only MACs with two or three senders are supported")

    try:
        bounds = mac_chains.mac_region_bounds(mac, cfg)
    except errors.Analysis_Error as err:
        try:
            mh.analysis_error(command_line.COMMAND_LINE, err)
        except errors.Error:
            mh.summary_and_exit()

    digest = cfg.digest(command_line.result_arguments(options))

    if options.bounds:
        fd = report.open_output(options.out)
        writer = report.Report_Writer(fd, options.format, digest)
        writer.write_table(["bound", "value"],
                           [{"bound": name, "value": value}
                            for name, value in bounds.named().items()])
        report.close_output(fd)
        mh.summary_and_exit()

    columns = rate_columns(mac.num_senders)
    if options.rates is not None:
        if len(target) != mac.num_senders:
            clp["ap"].error("--rates needs %u values" % mac.num_senders)
        columns += (["target_%u" % (s + 1) for s in range(mac.num_senders)] +
                    ["gap", "guaranteed"] +
                    (["i"] if mac.num_senders == 2 else []))
        work_list = [Approximation_WP(mh, cfg, options, mac, N, target,
                                      epsilon, bounds.sum_rate())]

    else:
        if options.path is not None:
            try:
                paths = [mac_chains.Chain_Path.from_string(options.path,
                                                           mac.num_senders)]
            except errors.Analysis_Error as err:
                clp["ap"].error("--path: %s" % err.message)
            if paths[0].N != N:
                clp["ap"].error("--path must contain every sender %u times"
                                % N)
        elif mac.num_senders == 2:
            paths = mac_chains.nu_class(N)
        else:
            paths = mac_chains.mu_class(N)

        work_list = [Path_WP(mh, cfg, options, mac, N,
                             paths[first:first + count], bounds.sum_rate())
                     for first, count in work_package.chunks(len(paths),
                                                             cfg.workers)]

    back_end = CQP_MAC(options, cfg, digest, columns)
    command_line.execute(mh, options, cfg, back_end, work_list)


def main():
    command_line.ice_handler(main_handler)


if __name__ == "__main__":
    main()
