from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # pure-Python install; gauss_periodize falls back to the NumPy kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "gauss_periodize._ckernels",
                ["src/gauss_periodize/_ckernels.pyx"],
                extra_compile_args=["-O3", "-fno-fast-math", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
