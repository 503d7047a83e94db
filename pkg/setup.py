"""Build the optional compiled counting kernels.

The package works without the extension (pure-Python fallback is selected
at import time), so a failed compile downgrades to a warning instead of
aborting the install. Set GLOSSOTYPE_NO_EXT=1 to skip the build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as err:
            self._warn(err)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as err:
            self._warn(err)

    @staticmethod
    def _warn(err):
        print(
            f"WARNING: building glossotype._speedups failed ({err}); "
            "falling back to the pure-Python kernels",
            file=sys.stderr,
        )


def extensions():
    if os.environ.get("GLOSSOTYPE_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; skipping compiled kernels", file=sys.stderr)
        return []
    exts = [
        Extension(
            "glossotype.kernels._speedups",
            sources=["src/glossotype/kernels/_speedups.pyx"],
        )
    ]
    return cythonize(exts, compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
