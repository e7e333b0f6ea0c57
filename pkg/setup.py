"""Build script for the optional compiled lattice-scan kernel.

The package is pure Python except for one hot loop: enumerating integer
points of a polytope slice.  That loop has a Cython implementation
(`equimirror.geometry._scan`) and a pure-Python twin
(`equimirror.geometry.scan_py`) with the same interface.  If the extension
fails to build the install still succeeds and the Python twin is used.
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
                "equimirror.geometry._scan",
                sources=["src/equimirror/geometry/_scan.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
