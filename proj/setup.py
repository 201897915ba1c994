import os
import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(__file__).parent.resolve())


class CMakeBuild(build_ext):
    """Builds the _core extension with the project's CMake tree and copies
    the staged module into the location setuptools expects."""

    def build_extension(self, ext):
        out_path = Path.cwd() / self.get_ext_fullpath(ext.name)
        build_temp = Path(self.build_temp).resolve()
        build_temp.mkdir(parents=True, exist_ok=True)

        cmake_args = [
            f"-DPYTHON_EXECUTABLE={sys.executable}",
            f"-DCMAKE_BUILD_TYPE={'Debug' if self.debug else 'Release'}",
            "-DPROPH_BUILD_TESTS=OFF",
            "-DPROPH_BUILD_CLI=OFF",
            "-DPROPH_BUILD_PYTHON=ON",
            "-DPROPH_REQUIRE_PYTHON=ON",
        ]
        try:
            import pybind11

            cmake_args.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass

        subprocess.run(
            ["cmake", ext.sourcedir, *cmake_args], cwd=build_temp, check=True
        )
        subprocess.run(
            [
                "cmake",
                "--build",
                ".",
                "--target",
                "_core",
                "--parallel",
                str(os.cpu_count() or 2),
            ],
            cwd=build_temp,
            check=True,
        )

        staged = build_temp / "python" / "prophgames"
        candidates = sorted(staged.glob("_core.*"))
        if not candidates:
            raise RuntimeError(f"no extension module staged under {staged}")
        out_path.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(candidates[-1], out_path)


setup(
    ext_modules=[CMakeExtension("prophgames._core")],
    cmdclass={"build_ext": CMakeBuild},
)
