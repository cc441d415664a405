#!/usr/bin/env python
#-*- coding: utf-8 -*-

from sharklab import __version__
import os
from os.path import join as pj
import sys
from setuptools import setup

usr_share_path = '/usr/share/sharklab'
# If this is true then it means we are in a virtualenv
if hasattr(sys, 'real_prefix') or sys.prefix != getattr(sys, 'base_prefix',
                                                         sys.prefix):
    usr_share_path = pj(sys.prefix, 'share', 'sharklab')

data_files = []
for root, dirs, file_names in os.walk('data/'):
    files = []
    for file_name in file_names:
        if not file_name.endswith('.pyc'):
            files.append(pj(root, file_name))
    data_files.append([pj(usr_share_path, root.replace('data/', '')), files])

install_requires = []
with open('requirements.txt') as f:
    for line in f:
        line = line.strip()
        if not line or line.startswith("#") or line.startswith('hypothesis'):
            continue
        install_requires.append(line)

setup(
    name="sharklab",
    version=__version__,
    description="Exact periodic orbit analysis of piecewise-linear interval "
                "maps and the Sharkovsky order",
    package_dir={'sharklab': 'sharklab'},
    data_files=data_files,
    packages=['sharklab', 'sharklab.tests', 'sharklab.utils'],
    scripts=["bin/sharklab"],
    install_requires=install_requires,
    extras_require={'test': ['hypothesis>=3.0']},
)
