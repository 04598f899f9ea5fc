"""Build script: compiles the optional term-arithmetic kernel.

The package is pure Python; `bangles._polykernel` is a Cython build of the
same merge/accumulate loops found in `bangles._polypure`. If Cython or a C
compiler is unavailable the build silently skips the extension and the
package falls back to the pure implementation at import time.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    # any compiler failure downgrades to the pure-Python backend
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled kernel ({exc!r}); using pure backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping {ext.name} ({exc!r}); using pure backend")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/bangles/_polykernel.pyx"],
        compiler_directives={"language_level": 3},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
