from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "gptparticles._ryser",
        ["src/gptparticles/_ryser.pyx"],
        extra_compile_args=["-O3"],
        # a failed compile leaves the pure-Python backend in place
        optional=True,
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)
