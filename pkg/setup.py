from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to numpy
# implementations when the extension is absent (see quadboost.backend).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "quadboost._kernels",
                ["src/quadboost/_kernels.pyx"],
                # Reassociation lets the vectorizer widen the int8*double
                # row dots; the reduction order is then fixed per build,
                # which is all the determinism contract asks for.
                extra_compile_args=[
                    "-O3",
                    "-march=native",
                    "-fassociative-math",
                    "-fno-signed-zeros",
                    "-fno-trapping-math",
                    "-fno-math-errno",
                ],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
