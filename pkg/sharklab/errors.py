import yaml


class SharkLabError(Exception):
    pass

class DomainError(SharkLabError):
    pass

class PreconditionError(SharkLabError):
    pass

class ParameterError(SharkLabError):
    pass

class ResourceBudgetExceeded(SharkLabError):
    def __init__(self, budget, what='pieces', reached=None):
        self.budget = budget
        self.what = what
        self.reached = reached
        message = "%s budget of %d exceeded" % (what, budget)
        if reached is not None:
            message += " (reached n = %d)" % reached
        SharkLabError.__init__(self, message)

class InvalidRational(SharkLabError):
    pass

class InvalidPattern(SharkLabError):
    pass

class MapFileError(SharkLabError):
    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        SharkLabError.__init__(self, "%s: %s" % (field, reason))

class InvalidOption(SharkLabError):
    pass

class ReportNotCreated(SharkLabError):
    pass

class ReportAlreadyClosed(SharkLabError):
    pass

class VerificationFailed(SharkLabError):
    pass

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET_EXCEEDED = 3

def exitCodeFor(error):
    """
    Given an exception raised while running a command return the exit code
    the command line tool should terminate with.

    Args:

        error: an exception instance

    Returns:

        An integer exit code. Input and parameter problems are 2, exhausted
        resource budgets are 3 and failed verifications are 1.
    """
    from sharklab.utils import log

    if isinstance(error, ResourceBudgetExceeded):
        log.err("Resource budget exceeded: %s" % error)
        code = EXIT_BUDGET_EXCEEDED

    elif isinstance(error, VerificationFailed):
        log.err("Verification failed: %s" % error)
        code = EXIT_VERIFICATION_FAILED

    elif isinstance(error, MapFileError):
        log.err("Malformed map file, field %s" % error)
        code = EXIT_INPUT_ERROR

    elif isinstance(error, InvalidPattern):
        log.err("Unreadable pattern: %s" % error)
        code = EXIT_INPUT_ERROR

    elif isinstance(error, InvalidRational):
        log.err("Invalid rational: %s" % error)
        code = EXIT_INPUT_ERROR

    elif isinstance(error, (ParameterError, InvalidOption)):
        log.err("Invalid parameter: %s" % error)
        code = EXIT_INPUT_ERROR

    elif isinstance(error, (DomainError, PreconditionError)):
        log.err("%s" % error)
        code = EXIT_INPUT_ERROR

    elif isinstance(error, yaml.YAMLError):
        log.err("Unreadable YAML: %s" % error)
        code = EXIT_INPUT_ERROR

    elif isinstance(error, (IOError, OSError)):
        log.err("Unable to access file: %s" % error)
        code = EXIT_INPUT_ERROR

    else:
        log.err("Unknown failure type: %s" % type(error))
        code = EXIT_INPUT_ERROR

    return code
