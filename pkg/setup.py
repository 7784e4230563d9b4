import os

import numpy
from setuptools import setup

ext_modules = []
if os.environ.get("DESC3D_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "desc3d._ckernel",
                    ["src/desc3d/_ckernel.pyx"],
                    include_dirs=[numpy.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
