"""Build script for the optional compiled QP kernel.

The package works without the extension (a pure-numpy kernel is selected at
import time), so a failed compile downgrades to a warning instead of breaking
the install.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"compiled QP kernel skipped ({exc}); "
                          "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled QP kernel skipped ({exc}); "
                          "falling back to the pure-Python kernel")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython not available; building without the compiled QP kernel")
        return []
    return cythonize(
        [Extension("ivmopt._qp_core", ["src/ivmopt/_qp_core.pyx"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
