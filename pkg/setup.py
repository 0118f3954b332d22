"""Build script.  The compiled extension is optional: when Cython (or a C
compiler) is unavailable the package falls back to the pure-Python kernel
in tropkern._kernel_py, selected at import time by tropkern.kernel."""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Swallow compiler failures; the pure-Python fallback keeps working."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print("warning: building tropkern._speedups failed (%s); "
                  "using the pure-Python kernel" % exc)

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print("warning: building %s failed (%s); "
                  "using the pure-Python kernel" % (ext.name, exc))


def extensions():
    src = os.path.join("src", "tropkern", "_speedups.pyx")
    if not os.path.exists(src):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - cython not installed
        return []
    ext = Extension("tropkern._speedups", [src])
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
