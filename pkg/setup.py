"""Build script: compiles the optional kernel extension when Cython and a C
toolchain are available, and falls back to the pure-Python kernels otherwise.

Set GCCKIT_NO_EXT=1 to skip the extension entirely.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install because the accelerator would not compile."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "warning: compiled kernels unavailable (%s); "
            "using the pure-Python fallback" % exc,
            file=sys.stderr,
        )


ext_modules = []
cmdclass = {}
if os.environ.get("GCCKIT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/gcckit/_kernels/_ckernels.pyx"],
            language_level=3,
        )
        cmdclass["build_ext"] = optional_build_ext
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass=cmdclass)
