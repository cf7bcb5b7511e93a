# Copyright 2026 The slipfsi Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================
"""Setup for pip package."""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

from setuptools import find_packages
from setuptools import setup

__version__ = '0.0.1'
REQUIRED_PACKAGES = [
    'absl-py >= 0.9.0',
    'numpy >= 1.19.0',
    'protobuf >= 3.8.0',
    'tensorflow >= 2.4.0',
]
project_name = 'slipfsi'


setup(
    name=project_name,
    version=__version__,
    description=('slipfsi simulates compressible barotropic fluid flow over a'
                 ' viscoelastic plate with Navier-slip walls, and measures'
                 ' its low Mach / high Reynolds number limit'),
    author='The slipfsi Authors',
    # Contained modules and scripts.
    packages=find_packages(),
    install_requires=REQUIRED_PACKAGES,
    entry_points={
        'console_scripts': ['slipfsi = slipfsi.cli:run_main'],
    },
    zip_safe=False,
    python_requires='>=3.7',
    # PyPI package information.
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
    license='Apache 2.0',
    keywords='tensorflow fluid structure interaction low mach limit',
)
