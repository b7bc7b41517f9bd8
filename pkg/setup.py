"""Build hook for the optional compiled matching kernel.

The extension is a pure speedup; when Cython or a C compiler is missing the
package installs without it and robocim.matching falls back to the Python
kernel.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("robocim._matching_c", ["src/robocim/_matching_c.pyx"])],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
