from setuptools import Extension, setup

# The compiled kernel is optional: without Cython or a C++ compiler the
# package installs with the pure-Python kernel only.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "schutz._ckernel",
                ["src/schutz/_ckernel.pyx"],
                language="c++",
                extra_compile_args=["-O3", "-std=c++17"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
