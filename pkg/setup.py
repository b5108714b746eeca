#!/usr/bin/env python
from setuptools import find_packages, setup


tests_require = [
    'hypothesis>=6.0',
]

setup(name='tssforge',
    version='0.1.0',
    description='Totally symmetric sets and braid group homomorphisms into finite groups',
    packages=find_packages(),
    include_package_data=True,
    package_data={
        'tssforge': [
            'templates/tssforge/reports/*.txt',
            'tests/fixtures/*.cayley',
            'tests/fixtures/*/*',
            'tests/fixtures/empty/.keep',
        ],
    },
    install_requires=[
        'Django>=3.2',
        'numpy>=1.20',
        'sympy>=1.9',
    ],
    tests_require=tests_require,
    extras_require={
        'tests': tests_require,
    },
    entry_points={
        'console_scripts': [
            'tssforge = tssforge.cli:main',
        ],
    },
    test_suite='tssforge.tests.__main__.__main__',
    zip_safe=False,
    license='Apache License 2.0',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Framework :: Django',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ]
)
