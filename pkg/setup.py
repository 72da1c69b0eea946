import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QENVELOPE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "qenvelope._ckernel",
                    [os.path.join("src", "qenvelope", "_ckernel.pyx")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
