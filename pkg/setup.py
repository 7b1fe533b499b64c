"""Build hooks: compile the optional Cython kernel, fall back to pure Python.

The package must install and work without a compiler; the extension is a
speedup, never a requirement.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Swallow extension build failures so installation always succeeds."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: skipping compiled kernel ({exc}); using pure-Python backend")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            print(f"warning: could not build {ext.name} ({exc}); using pure-Python backend")


def extensions():
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except Exception:  # pragma: no cover - cython not installed
        return []
    exts = [
        Extension(
            "frobcore._kernel._speedups",
            ["src/frobcore/_kernel/_speedups.pyx"],
        )
    ]
    return cythonize(exts, compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
