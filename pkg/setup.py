"""Build hook for the optional compiled kernel.

Metadata lives in pyproject.toml.  If Cython or a C compiler is missing the
extension is skipped and the package runs on the pure-Python kernel.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "guttstar._ckernels",
                ["src/guttstar/_ckernels.pyx"],
                extra_compile_args=["-O2"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
