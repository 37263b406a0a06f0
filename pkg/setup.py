from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "forestcubes._kernels._fast",
                ["src/forestcubes/_kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
else:
    # No Cython: install pure-Python only, the kernel shim falls back at import.
    ext_modules = []

setup(ext_modules=ext_modules)
