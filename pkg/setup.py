import os

from setuptools import setup

ext_modules = []
if os.environ.get("RSSS_NO_EXT", "") in ("", "0"):
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("rsss._kernels", ["src/rsss/_kernels.pyx"], language="c++")],
            compiler_directives={"language_level": "3"},
        )
        for ext in ext_modules:
            ext.include_dirs.append(numpy.get_include())
            ext.extra_compile_args.append("-O2")

setup(ext_modules=ext_modules)
