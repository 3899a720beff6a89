import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

# Build is optional at runtime: the package falls back to NumPy
# implementations when the extension is absent (see vevid.backend).
extensions = [
    Extension(
        "vevid._kernels",
        ["src/vevid/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
