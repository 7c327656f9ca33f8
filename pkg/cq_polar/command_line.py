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


# This is the common command-line handling for all CQ_POLAR tools.

import os
import sys
import argparse
import traceback
import textwrap
import multiprocessing
import functools

from cq_polar import errors
from cq_polar import work_package
from cq_polar import cfg_parser
from cq_polar import q_channels
from cq_polar.config import Config, SETTINGS
from cq_polar.version import BUG_REPORTS, VERSION, FULL_NAME

COMMAND_LINE = errors.Location("<command-line>")

# Options that do not influence results and are left out of the
# configuration hash
PRESENTATION_OPTIONS = frozenset(["out", "format", "single", "brief",
                                  "verbose", "json_messages", "workers",
                                  "records", "frontier", "plan", "config",
                                  "ignore_config", "version"])


def create_basic_clp(description, epilog=None):
    rv = {}

    ap = argparse.ArgumentParser(
        description=description,
        epilog=epilog)
    rv["ap"] = ap

    ap.add_argument("-v", "--version",
                    action="store_true",
                    default=False,
                    help="Show version and exit")
    ap.add_argument("--channel",
                    metavar="FILE",
                    default=None,
                    help="Channel document (json) to work on")

    code_options = ap.add_argument_group("code options")
    rv["code_options"] = code_options

    code_options.add_argument("--N",
                              dest="N",
                              type=int,
                              default=None,
                              metavar="BLOCKLENGTH",
                              help="Blocklength, a power of two")
    code_options.add_argument("--n",
                              dest="n",
                              type=int,
                              default=None,
                              metavar="LEVELS",
                              help="Number of polarization levels (N = 2^n)")

    config_options = ap.add_argument_group("configuration options")
    rv["config_options"] = config_options

    config_options.add_argument("--config",
                                metavar="FILE",
                                default=None,
                                help=("Read settings from this file instead"
                                      " of %s" % cfg_parser.CONFIG_FILENAME))
    config_options.add_argument("--ignore-config",
                                action="store_true",
                                default=False,
                                help=("Ignore all %s files" %
                                      cfg_parser.CONFIG_FILENAME))
    config_options.add_argument("--max-dim",
                                type=int,
                                default=None,
                                metavar="CAP",
                                help="Override the max_dim resource cap")
    config_options.add_argument("--workers",
                                type=int,
                                default=None,
                                help="Override the number of worker processes")
    config_options.add_argument("--single",
                                action="store_true",
                                default=False,
                                help="Resolve everything in this process")

    output_options = ap.add_argument_group("output options")
    rv["output_options"] = output_options

    output_options.add_argument("--out",
                                metavar="FILE",
                                default=None,
                                help=("Write results to this file instead of"
                                      " standard output"))
    output_options.add_argument("--format",
                                choices=["csv", "jsonl"],
                                default="csv",
                                help="Output format (default: csv)")
    output_options.add_argument("--brief",
                                action="store_true",
                                default=False,
                                help="Do not show info messages")
    output_options.add_argument("--verbose",
                                action="store_true",
                                default=False,
                                help="Show progress for every work package")
    output_options.add_argument("--json-messages",
                                metavar="FILE",
                                default=None,
                                help="Write messages to FILE as json")

    return rv


def blocklength(clp, options, required=True):
    if options.N is not None and options.n is not None:
        clp["ap"].error("--N and --n are mutually exclusive")
    if options.n is not None:
        if options.n < 0:
            clp["ap"].error("--n must not be negative")
        return 2 ** options.n
    if options.N is not None:
        if options.N < 1 or options.N & (options.N - 1):
            clp["ap"].error("--N must be a power of two, not %u" % options.N)
        return options.N
    if required:
        clp["ap"].error("one of --N or --n is required")
    return None


def parse_args(clp, tool_id, overrides=(), argv=None):
    """ Parse the command-line, set up the message handler and build
        the effective configuration. overrides lists (option, setting)
        pairs of tool specific options that override settings.
    """
    options = clp["ap"].parse_args(argv)

    if options.version:
        print(FULL_NAME)
        sys.exit(0)

    if options.json_messages:
        mh = errors.JSON_Message_Handler(tool_id, options.json_messages)
    else:
        mh = errors.Message_Handler(tool_id)
    mh.show_info = not options.brief
    mh.verbose   = options.verbose
    if options.out is None:
        mh.to_stderr = True
        # results go to standard output

    if options.channel is not None and not os.path.isfile(options.channel):
        clp["ap"].error("%s is not a file" % options.channel)
    if options.config is not None and not os.path.isfile(options.config):
        clp["ap"].error("%s is not a file" % options.config)

    cfg = Config()
    try:
        if not options.ignore_config:
            filename = options.config or cfg_parser.find_config()
            if filename:
                cfg = cfg_parser.load_config(mh, filename, cfg)
    except errors.Error:
        mh.summary_and_exit()

    for option, setting in (("max_dim", "max_dim"),
                            ("workers", "workers")) + tuple(overrides):
        value = getattr(options, option)
        if value is None:
            continue
        problem = SETTINGS[setting].check(value)
        if problem:
            clp["ap"].error("--%s %s" % (option.replace("_", "-"), problem))
        cfg.set(setting, value)

    return options, mh, cfg


def result_arguments(options):
    return {name: value
            for name, value in sorted(vars(options).items())
            if name not in PRESENTATION_OPTIONS}


def load_channel(mh, clp, options, cfg, kinds):
    """ Load the --channel document, which must be of one of kinds """
    if options.channel is None:
        clp["ap"].error("--channel is required")
    try:
        channel = q_channels.load_channel(mh, options.channel, cfg)
        kind = channel.kind
        if kind not in kinds:
            mh.error(errors.Location(options.channel),
                     "this tool needs a channel of kind %s, not %s" %
                     (" or ".join(kinds), kind))
    except errors.Error:
        mh.summary_and_exit()
    return channel


def parse_bits_list(clp, text, flag, kind=float):
    try:
        return [kind(item) for item in text.split(",")]
    except ValueError:
        clp["ap"].error("%s expects a comma separated list, not '%s'" %
                        (flag, text))


class CQP_Back_End:
    def __init__(self, name):
        assert isinstance(name, str)
        self.name = name

    @classmethod
    def process_wp(cls, wp):
        raise errors.ICE("unimplemented process_wp function")

    def process_result(self, result):
        pass

    def post_process(self):
        pass


def dispatch_wp(process_fn, wp):
    try:
        wp.mh.progress(wp.location(), "processing")
        result = process_fn(wp)
        assert isinstance(result, work_package.Result)
        return result

    except errors.Analysis_Error as err:
        try:
            wp.mh.analysis_error(wp.location(), err, fatal=False)
        except errors.Error:  # pragma: no cover
            raise errors.ICE("non-fatal message raised Error")
        return work_package.Result(wp, False)

    except errors.Error:
        return work_package.Result(wp, False)


def execute(mh, options, cfg, back_end, work_list):
    assert isinstance(mh, errors.Message_Handler)
    assert isinstance(back_end, CQP_Back_End)

    process_fn = functools.partial(dispatch_wp, back_end.process_wp)

    def integrate(result):
        assert isinstance(result, work_package.Result)
        mh.integrate(result.wp.mh)
        if result.processed:
            mh.work_done += 1
            back_end.process_result(result)

    if options.single or cfg.workers == 1 or len(work_list) <= 1:
        for wp in work_list:
            integrate(process_fn(wp))

    else:
        with multiprocessing.Pool(cfg.workers) as pool:
            for result in pool.imap(process_fn, work_list):
                integrate(result)

    # Nothing is written if any work package failed
    if mh.errors == 0:
        try:
            back_end.post_process()
        except errors.Analysis_Error as err:
            try:
                mh.analysis_error(COMMAND_LINE, err)
            except errors.Error:
                pass
        except errors.Error:
            pass
    mh.summary_and_exit()


def ice_handler(main_function):
    try:
        main_function()
    except errors.ICE as internal_compiler_error:  # pragma: no cover
        traceback.print_exc()
        print("-" * 70)
        print("- Encountered an internal error. This is a tool bug, please")
        print("- report it on our issue tracker so we can fix it:")
        print("-")
        print("-    %s" % BUG_REPORTS)
        print("-")
        print("- Please include the above backtrace in your bug report, and")
        print("- the following information:")
        print("-")
        print("- CQ_POLAR version: %s" % VERSION)
        print("-")
        lines = textwrap.wrap(internal_compiler_error.reason)
        print("\n".join("- %s" % line for line in lines))
        print("-" * 70)
        sys.exit(1)
