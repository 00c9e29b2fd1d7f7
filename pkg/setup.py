import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: the numpy fallback is used at runtime
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hearthledger._kernels",
                ["src/hearthledger/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
