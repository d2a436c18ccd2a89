from setuptools import Extension, setup


def extensions():
    """Compiled kernels are optional: without Cython the package installs
    pure-Python only and selects the fallback backend at import."""
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension("trihahn._kernels_c", ["src/trihahn/_kernels_c.pyx"])
    return cythonize(ext, language_level="3")


setup(ext_modules=extensions())
