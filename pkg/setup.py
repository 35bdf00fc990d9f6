import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-python fallback in geopaths._core keeps the package functional
    # without the compiled extension.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "geopaths._core._kernels",
                ["src/geopaths/_core/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
