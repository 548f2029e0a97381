from setuptools import setup, find_packages  # Always prefer setuptools over distutils
from codecs import open  # To use a consistent encoding
from os import path

here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()


# This will add __version__ to version dict
version = {}
with open(path.join(here, 'lfnforge/version.py'), encoding='utf-8') as (
        version_file):
    exec(version_file.read(), version)

setup(
    name='lfnforge',

    version=version['__version__'],

    description='High-precision L-functions of holomorphic newforms and statistics over '
                'their zeros.',
    long_description=long_description,

    # Choose your license
    license='BSD 3-Clause',

    install_requires=['numpy', 'pandas', 'scipy', 'h5py', 'joblib', 'scikit-learn', 'mpmath'],
    extras_require={'tests': ['pytest']},

    entry_points={
        'console_scripts': ['lfnforge = lfnforge.cli:main'],
    },

    # See https://PyPI.python.org/PyPI?%3Aaction=list_classifiers
    classifiers=[
        'Development Status :: 3 - Alpha',

        # Indicate who your project is intended for
        "Intended Audience :: Science/Research",

        "Topic :: Scientific/Engineering :: Mathematics",

        # Pick your license as you wish (should match "license" above)
        'License :: OSI Approved :: BSD License',

        'Programming Language :: Python :: 3.7',
    ],

    # What does your project relate to?
    keywords='l-functions modular-forms zeros number-theory arbitrary-precision',

    packages=find_packages(exclude=['test', 'test.*']),
    include_package_data=False,
    zip_safe=False,
)
