"""Build script: compiles the optional Cython kernels.

The extension is a pure accelerator. If Cython or a C compiler is missing
the build degrades to the numpy fallback selected at import time, so the
install must never fail because of the extension.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compiler failures to a warning."""

    def run(self):
        try:
            build_ext.run(self)
        except Exception as exc:  # compiler missing, header mismatch, ...
            print(f"warning: C extension build skipped ({exc}); "
                  "falling back to the pure-python kernels")

    def build_extension(self, ext):
        try:
            build_ext.build_extension(self, ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to the pure-python kernels")


ext_modules = []
if not os.environ.get("SCARFCS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("scarfcs._ckernels", ["src/scarfcs/_ckernels.pyx"])],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
