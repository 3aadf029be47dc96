from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("geolayout.engine._speedups",
                   ["src/geolayout/engine/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still installs; the NumPy kernel is used.
    extensions = []

setup(ext_modules=extensions)
