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


import sys
import json


class Location:
    """ This fully describes where a message originates from.

    * filename is the document (channel spec, split spec, config file)
      or a pseudo-file such as "<command-line>"
    * entry names the offending element inside the document, for
      example 'states["01"]' or 'members[1]'
    * line is the line number (starts at 1), only used for config files
    """
    def __init__(self, filename, entry=None, line=None):
        assert isinstance(filename, str)
        assert entry is None or isinstance(entry, str)
        assert line is None or (isinstance(line, int) and line >= 1)

        self.filename = filename.replace("\\", "/")
        # We canonicalise filenames so that windows and linux produce
        # the same output.

        self.entry = entry
        self.line  = line

    def __str__(self):
        return "Location(%s,l=%s,e=%s)" % (self.filename,
                                           self.line,
                                           self.entry)

    def __lt__(self, other):
        assert isinstance(other, Location)

        return (self.filename,
                self.line if self.line else 0,
                self.entry if self.entry else "") < \
            (other.filename,
             other.line if other.line else 0,
             other.entry if other.entry else "")

    def within(self, entry):
        """ Returns a location for a nested entry of this one. """
        assert isinstance(entry, str)
        if self.entry is None:
            return Location(self.filename, entry, self.line)
        else:
            return Location(self.filename,
                            "%s%s" % (self.entry, entry),
                            self.line)

    def to_json(self):
        rv = {"filename": self.filename}
        if self.entry:
            rv["entry"] = self.entry
        if self.line:
            rv["line"] = self.line
        return rv

    def short_string(self):
        rv = self.filename
        if self.line:
            rv += ":%u" % self.line
        if self.entry:
            rv += ": %s" % self.entry
        return rv


##############################################################################
# Exit status used by all tools
##############################################################################

EXIT_OK          = 0
EXIT_VALIDATION  = 2
EXIT_RESOURCE    = 3
EXIT_DEGENERATE  = 4


class ICE(Exception):
    """ Internal errors, i.e. bugs in CQ_POLAR """
    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class Error(Exception):
    """ Located errors in user supplied documents. These are always
        raised after the message has been registered with a
        Message_Handler.
    """
    def __init__(self, location, message, exit_code=EXIT_VALIDATION):
        assert isinstance(location, Location)
        assert isinstance(message, str)

        super().__init__(message)
        self.location  = location
        self.message   = message
        self.exit_code = exit_code


class Analysis_Error(Exception):
    """ Base class of errors raised by the numerical library """
    exit_code = EXIT_VALIDATION

    def __init__(self, message):
        assert isinstance(message, str)
        super().__init__(message)
        self.message = message


class Invariant_Error(Analysis_Error):
    """ Invalid density matrix, parameter, or register structure """


class Dimension_Error(Invariant_Error):
    pass


class Resource_Error(Analysis_Error):
    """ A configured resource cap would be exceeded """
    exit_code = EXIT_RESOURCE


class Degeneracy_Error(Analysis_Error):
    """ A measurement outcome with numerically zero total probability """
    exit_code = EXIT_DEGENERATE


class Message:
    def __init__(self, location, kind, message, fatal, exit_code):
        assert isinstance(location, Location)
        assert kind in ("info",       # progress and diagnostics
                        "warning",    # suspicious but not fatal
                        "error")      # everything else
        assert isinstance(message, str)
        assert isinstance(fatal, bool)
        assert isinstance(exit_code, int)
        assert not fatal or kind == "error", \
            "fatal=%s, kind=%s violates precondition" % (fatal, kind)

        self.location  = location
        self.kind      = kind
        self.message   = message
        self.fatal     = fatal
        self.exit_code = exit_code

    def __str__(self):
        return "Message(%s,%s,%s)" % (self.location,
                                      self.kind,
                                      repr(self.message))

    def __lt__(self, other):
        assert isinstance(other, Message)

        return self.location < other.location

    def to_json(self):
        return {"location"  : self.location.to_json(),
                "kind"      : self.kind,
                "message"   : self.message,
                "fatal"     : self.fatal,
                "exit_code" : self.exit_code}


class Message_Handler:
    """ All messages should be routed through this class """
    def __init__(self, tool_id):
        assert tool_id in ("debug",
                           "polarize", "mac", "decode", "hk")

        self.tool_id = tool_id

        self.warnings  = 0
        self.errors    = 0
        self.exit_code = EXIT_OK
        self.documents = set()
        self.work_done = 0

        self.show_info = True
        self.verbose   = False
        self.to_stderr = False

        self.messages = []

    def fork(self):
        rv = Message_Handler(self.tool_id)
        self.fork_copy_attributes(rv)
        return rv

    def fork_copy_attributes(self, other):
        other.show_info = self.show_info
        other.verbose   = self.verbose
        other.to_stderr = self.to_stderr

    def stream(self):
        return sys.stderr if self.to_stderr else sys.stdout

    def integrate(self, other):
        assert isinstance(other, Message_Handler)
        assert self.show_info == other.show_info

        self.work_done += other.work_done
        self.documents |= other.documents
        for msg in other.messages:
            self.process_message(msg)
        other.messages = []

    def register_document(self, filename):
        assert isinstance(filename, str)
        self.documents.add(filename.replace("\\", "/"))

    def process_message(self, message):
        # Count the message
        if message.kind == "info":
            if not self.show_info:
                return
        elif message.kind == "warning":
            self.warnings += 1
        elif message.kind == "error":
            self.errors += 1
            self.exit_code = max(self.exit_code, message.exit_code)
        else:
            raise ICE("unexpected message kind %s" % message.kind)

        # Emit
        self.emit_message(message)

    def emit_message(self, message):
        if message.location.entry is None:
            full_location = message.location.filename
        else:
            full_location = "%s: %s" % (message.location.filename,
                                        message.location.entry)

        if message.location.line is None:
            print("%s: %s: %s" % (full_location,
                                  message.kind,
                                  message.message),
                  file=self.stream())
        else:
            print("%s:%u: %s: %s" % (message.location.filename,
                                     message.location.line,
                                     message.kind,
                                     message.message),
                  file=self.stream())

    def emit_summary(self):
        tmp = "CQ_POLAR %s Summary: " % self.tool_id.capitalize()
        stats = ["%u document(s) loaded" % len(self.documents)]
        if self.work_done:
            stats.append("%u work package(s) resolved" % self.work_done)
        if self.warnings:
            stats.append("%u warning(s)" % self.warnings)
        if self.errors:
            stats.append("%u error(s)" % self.errors)
        if not (self.warnings or self.errors):
            stats.append("everything seems fine")
        tmp += ", ".join(stats)
        print(tmp, file=self.stream())

    def register_message(self, msg):
        assert isinstance(msg, Message)

        self.messages.append(msg)

        # Raise exception for fatal messages
        if msg.fatal:
            raise Error(msg.location, msg.message, msg.exit_code)

    def flush(self):
        for msg in self.messages:
            self.process_message(msg)
        self.messages = []

    def info(self, location, message):
        msg = Message(location  = location,
                      kind      = "info",
                      message   = message,
                      fatal     = False,
                      exit_code = EXIT_OK)
        self.register_message(msg)

    def progress(self, location, message):
        if self.verbose:
            self.info(location, message)

    def warning(self, location, message):
        msg = Message(location  = location,
                      kind      = "warning",
                      message   = message,
                      fatal     = False,
                      exit_code = EXIT_OK)
        self.register_message(msg)

    def error(self, location, message, fatal=True,
              exit_code=EXIT_VALIDATION):
        msg = Message(location  = location,
                      kind      = "error",
                      message   = message,
                      fatal     = fatal,
                      exit_code = exit_code)
        self.register_message(msg)

    def analysis_error(self, location, err, fatal=True):
        # Library errors carry their own exit status
        assert isinstance(err, Analysis_Error)
        self.error(location, err.message,
                   fatal     = fatal,
                   exit_code = err.exit_code)

    def config_error(self, location, message):
        # This is for raising errors in config files _only_.
        self.register_document(location.filename)
        self.error(location, message)

    def command_line_error(self, message):
        print("%s: error: %s" % (self.tool_name(), message),
              file=sys.stderr)
        sys.exit(EXIT_VALIDATION)

    def tool_name(self):
        return "cqp_%s" % self.tool_id

    def summary_and_exit(self):
        self.flush()
        self.emit_summary()
        sys.exit(self.exit_code)


class JSON_Message_Handler(Message_Handler):
    def __init__(self, tool_id, filename):
        super().__init__(tool_id)
        self.filename = filename
        self.blob     = {}

    def fork(self):
        rv = JSON_Message_Handler(self.tool_id, self.filename)
        self.fork_copy_attributes(rv)
        return rv

    def emit_message(self, message):
        if message.location.filename not in self.blob:
            self.blob[message.location.filename] = []

        self.blob[message.location.filename].append(message.to_json())

    def emit_summary(self):
        super().emit_summary()
        with open(self.filename, "w") as fd:
            json.dump(self.blob, fd, indent=2, sort_keys=True)
            fd.write("\n")
