from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install: the package falls back to _kernels_py at import.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("ffexpand._kernels_cy", ["src/ffexpand/_kernels_cy.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
