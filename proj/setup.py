"""Builds the risim._core extension with setuptools + pybind11.

CMake remains the primary build for the C++ library, CLI, and test suite;
this file exists so `pip install .` (or -e) can produce the python package
without requiring a separate CMake run.
"""

from glob import glob

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

ParallelCompile("NPY_NUM_BUILD_JOBS").install()

ext_modules = [
    Pybind11Extension(
        "risim._core",
        sorted(glob("src/*.cpp")) + ["bindings/module.cpp"],
        include_dirs=["include", "vendor"],
        cxx_std=20,
    ),
]

setup(
    ext_modules=ext_modules,
    cmdclass={"build_ext": build_ext},
)
