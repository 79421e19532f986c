"""CMake-driven build of the pybind11 extension (combforge._core)."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).resolve().parent
        out_dir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        try:
            import pybind11

            pybind11_dir = pybind11.get_cmake_dir()
        except ImportError:
            pybind11_dir = ""

        configure = [
            "cmake",
            "-S", str(source_dir),
            "-B", str(build_dir),
            "-DCOMBFORGE_PYTHON=ON",
            "-DCOMBFORGE_TESTS=OFF",
            f"-DCMAKE_BUILD_TYPE={os.environ.get('COMBFORGE_BUILD_TYPE', 'Release')}",
            f"-DPYTHON_EXECUTABLE={sys.executable}",
            f"-DPython3_EXECUTABLE={sys.executable}",
        ]
        if pybind11_dir:
            configure.append(f"-Dpybind11_DIR={pybind11_dir}")
        subprocess.run(configure, check=True)
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_core",
             "-j", str(os.cpu_count() or 2)],
            check=True,
        )

        built = next(build_dir.glob("_core*.so"))
        out_dir.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built), str(Path(self.get_ext_fullpath(ext.name))))


setup(
    ext_modules=[CMakeExtension("combforge._core")],
    cmdclass={"build_ext": CMakeBuild},
)
