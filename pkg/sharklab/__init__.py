# -*- encoding: utf-8 -*-

__version__ = "0.1.0"

__all__ = ['cli', 'constructions', 'errors', 'order', 'patterns',
           'periodic', 'plmap', 'plot', 'reporter', 'settings', 'utils']
