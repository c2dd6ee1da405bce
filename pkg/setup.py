#!/usr/bin/env python

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = ['fabulous==0.4.0', 'sympy>=1.9', 'numpy>=1.21', 'scipy>=1.7']

test_requirements = [ ]

setup(
    author="Shrinivas Vijay Deshmukh",
    author_email='shrinivas.deshmukh11@gmail.com',
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    description="Exact solver for generalized n-fold integer programs via Graver bases",
    entry_points={
        'console_scripts': [
            'nfold=nfold.cli:main',
        ],
    },
    install_requires=requirements,
    license="MIT license",
    long_description=readme + '\n\n' + history,
    include_package_data=True,
    keywords='nfold graver integer-programming',
    name='nfold',
    packages=find_packages(include=['nfold', 'nfold.*']),
    test_suite='tests',
    tests_require=test_requirements,
    url='https://github.com/shrinivdeshmukh/nfold',
    version='0.2.0',
    zip_safe=False,
)
