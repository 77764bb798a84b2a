"""
Setup of Scikit-Clustered
"""
# Always prefer setuptools over distutils
import os
import sys
# To use a consistent encoding
from codecs import open as codec_open

from setuptools import Extension, find_packages, setup

try:
    import numpy as np
except ImportError:
    sys.exit("Please install numpy>=1.24 first.")

try:
    from Cython.Build import cythonize
    from Cython.Distutils import build_ext
except ImportError:
    USE_CYTHON = False
else:
    USE_CYTHON = True

__version__ = "0.0.1"

here = os.path.abspath(os.path.dirname(__file__))

# Get the long description from README.md
with codec_open(os.path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

# get the dependencies and installs
with codec_open(os.path.join(here, "requirements.txt"), encoding="utf-8") as f:
    install_requires = [line.strip() for line in f.read().split("\n") if line.strip()]

cmdclass = {}

EXT = ".py" if USE_CYTHON else ".c"

# The dynamic programs are the hot loops of the projections.
extensions = [
    Extension(
        name="scikit_clustered.clustering.kmeans_1d",
        sources=["scikit_clustered/clustering/kmeans_1d" + EXT],
        include_dirs=[np.get_include()]
    ),
    Extension(
        name="scikit_clustered.projections.sparse",
        sources=["scikit_clustered/projections/sparse" + EXT],
        include_dirs=[np.get_include()]
    ),
]

if USE_CYTHON:
    extensions = cythonize(
        extensions,
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "nonecheck": False,
            "annotation_typing": False,
        },
    )
    cmdclass.update({"build_ext": build_ext})

# This call to setup() does all the work
setup(
    name="scikit_clustered",
    version=__version__,
    description="Scikit-Clustered fits linear models whose weights, samples or tasks are "
                "constrained to a small number of clusters.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        'Intended Audience :: Developers',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Operating System :: OS Independent"
    ],
    keywords=(
        "Clustering, Sparsity, Projected Gradient, "
        "Conditional Gradient, Supervised Learning"
    ),
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.9",
    include_package_data=True,
    install_requires=install_requires,
    cmdclass=cmdclass,
    ext_modules=extensions,
    entry_points={
        "console_scripts": ["scikit-clustered=scikit_clustered.cli:main"],
    },
)
