import os
import sys
import traceback

from twisted.python import log as txlog
from twisted.python import util
from twisted.python.failure import Failure
from twisted.python.logfile import DailyLogFile

from sharklab.settings import config


class LogWithNoPrefix(txlog.FileLogObserver):
    def emit(self, eventDict):
        text = txlog.textFromEventDict(eventDict)
        if text is None:
            return

        util.untilConcludes(self.write, "%s\n" % text)
        util.untilConcludes(self.flush)

_observers = []

def start(logfile=None, application_name="sharklab"):
    """
    Route log events to stderr and, if a logfile is configured, to a daily
    rotated log file.
    """
    if not logfile:
        logfile = config.basic.logfile

    stderr_observer = LogWithNoPrefix(sys.stderr).emit
    txlog.addObserver(stderr_observer)
    _observers.append(stderr_observer)

    if logfile:
        log_folder = os.path.dirname(os.path.abspath(logfile))
        log_filename = os.path.basename(logfile)
        daily_logfile = DailyLogFile(log_filename, log_folder)
        file_observer = txlog.FileLogObserver(daily_logfile).emit
        txlog.addObserver(file_observer)
        _observers.append(file_observer)

    debug("Starting %s" % application_name)

def stop():
    for observer in _observers:
        txlog.removeObserver(observer)
    del _observers[:]

def _emit(text):
    if _observers:
        txlog.msg(text)
    else:
        sys.stderr.write("%s\n" % text)

def msg(msg, *arg, **kw):
    if config.logging:
        _emit("%s" % msg)

def debug(msg, *arg, **kw):
    if config.advanced.debug and config.logging:
        _emit("[D] %s" % msg)

def err(msg, *arg, **kw):
    if config.logging:
        _emit("[!] %s" % msg)

def exception(error):
    """
    Error can either be an exception instance or a
    twisted.python.failure.Failure instance.
    """
    if isinstance(error, Failure):
        error.printTraceback(file=sys.stderr)
    else:
        exc_type, exc_value, exc_traceback = sys.exc_info()
        if exc_value is None:
            traceback.print_exception(type(error), error,
                                      error.__traceback__, file=sys.stderr)
        else:
            traceback.print_exception(exc_type, exc_value, exc_traceback,
                                      file=sys.stderr)
