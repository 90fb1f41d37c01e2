"""Build script: compiles the optional mod-p kernel extension.

The package is fully functional without it (pure-Python fallback is
selected at import); a missing compiler or Cython only costs speed.
"""
from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as e:  # pragma: no cover - toolchain dependent
            print(f"warning: compiled kernels skipped ({e}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as e:  # pragma: no cover - toolchain dependent
            print(f"warning: building {ext.name} failed ({e}); pure-Python fallback will be used")


ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("hyperfield._kernels._speed", ["src/hyperfield/_kernels/_speed.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:  # pragma: no cover - toolchain dependent
    print("warning: Cython not available; pure-Python kernels will be used")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
