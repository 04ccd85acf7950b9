import glob
import os

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

EIGEN_INCLUDE = os.environ.get("EIGEN_INCLUDE", "/usr/include/eigen3")

ext = Pybind11Extension(
    "aheft._aheft",
    sorted(glob.glob("src/*.cpp")) + ["bindings/module.cpp"],
    include_dirs=["include", EIGEN_INCLUDE],
    cxx_std=20,
)

setup(
    packages=["aheft"],
    package_dir={"aheft": "python/aheft"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
