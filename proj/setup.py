"""Setuptools fallback path: drives the CMake build of the _core module."""

import subprocess
from pathlib import Path

import pybind11
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        src = Path(__file__).parent.resolve()
        build = Path(self.build_temp).resolve()
        build.mkdir(parents=True, exist_ok=True)
        out = Path(self.get_ext_fullpath(ext.name)).parent.resolve()
        out.mkdir(parents=True, exist_ok=True)
        subprocess.check_call([
            "cmake", "-S", str(src), "-B", str(build),
            "-DSKBUILD=ON",
            f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out}",
        ])
        subprocess.check_call(
            ["cmake", "--build", str(build), "--target", "_core", "-j"])


setup(
    packages=["topoquench"],
    package_dir={"": "python"},
    ext_modules=[CMakeExtension("topoquench._core")],
    cmdclass={"build_ext": CMakeBuild},
)
