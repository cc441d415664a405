import os
from fractions import Fraction
from os.path import expanduser

import yaml

from sharklab import errors
from sharklab.utils import Storage

DEFAULT_PIECE_BUDGET = 10 ** 6
DEFAULT_WALK_BUDGET = 10 ** 5

PIECE_BUDGET_ENV = 'SHARKLAB_PIECE_BUDGET'


class SConfig(object):
    sections = ['basic', 'advanced', 'defaults']

    def __init__(self):
        self.global_options = {}
        self.logging = True
        self.basic = Storage()
        self.advanced = Storage()
        self.defaults = Storage()
        self.reset()

    def reset(self):
        """
        Restore the built in defaults, discarding anything read from a
        configuration file.
        """
        self.basic.clear()
        self.advanced.clear()
        self.defaults.clear()
        self.advanced.debug = False
        self.advanced.piece_budget = DEFAULT_PIECE_BUDGET
        self.advanced.walk_budget = DEFAULT_WALK_BUDGET
        self.defaults.bound = 12
        self.defaults.a = '1/3'
        self.defaults.depth = 6
        self.defaults.samples = 64
        self.set_paths()

    def set_paths(self):
        self.sharklab_home = os.path.join(expanduser('~'), '.sharklab')

        if self.global_options.get('configfile'):
            config_file = self.global_options['configfile']
        else:
            config_file = os.path.join('~', '.sharklab', 'sharklab.conf')
        self.config_file = expanduser(config_file)

    def read_config_file(self):
        """
        Load the YAML configuration file if there is one. A missing file
        leaves the defaults in place.
        """
        if not os.path.isfile(self.config_file):
            return

        with open(self.config_file) as f:
            try:
                configuration = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise errors.InvalidOption("%s is not valid YAML: %s" %
                                           (self.config_file, e))
        if not isinstance(configuration, dict):
            raise errors.InvalidOption("%s must hold a mapping of sections" %
                                       self.config_file)

        for setting in self.sections:
            try:
                for k, v in configuration[setting].items():
                    getattr(self, setting)[k] = v
            except (KeyError, AttributeError):
                pass
        self.check_defaults()
        self.set_paths()

    def check_defaults(self):
        """
        Reject default parameters that no command could use.
        """
        for key in ('bound', 'depth', 'samples'):
            value = self.defaults[key]
            if isinstance(value, bool) or not isinstance(value, int) \
                    or value < 1:
                raise errors.InvalidOption("defaults.%s must be a positive "
                                           "integer, got %r" % (key, value))
        try:
            a = self.defaultA
        except (TypeError, ValueError, ZeroDivisionError):
            raise errors.InvalidOption("defaults.a must be a rational p/q, "
                                       "got %r" % (self.defaults.a,))
        if not 0 < a < Fraction(1, 2):
            raise errors.InvalidOption("defaults.a must lie in (0, 1/2), "
                                       "got %s" % (self.defaults.a,))

    @property
    def pieceBudget(self):
        value = os.environ.get(PIECE_BUDGET_ENV)
        if value is None:
            value = self.advanced.piece_budget
        try:
            budget = int(value)
        except (TypeError, ValueError):
            raise errors.InvalidOption("%s must be an integer, got %r" %
                                       (PIECE_BUDGET_ENV, value))
        if budget < 1:
            raise errors.InvalidOption("piece budget must be positive")
        return budget

    @property
    def walkBudget(self):
        return int(self.advanced.walk_budget)

    @property
    def defaultA(self):
        return Fraction(str(self.defaults.a))

config = SConfig()
