"""Exact cochain calculus for finite-rank associative conformal algebras.

The heavy lifting lives in the compiled `_cfh` module; this package just
re-exports it.  In an installed wheel the extension sits inside the package;
in a build tree it is importable top-level from the build directory.
"""

try:
    from ._cfh import *  # noqa: F401,F403
    from ._cfh import __doc__ as _doc
except ImportError:  # build-tree layout: extension module on sys.path
    from _cfh import *  # type: ignore[import-not-found]  # noqa: F401,F403
    from _cfh import __doc__ as _doc

__doc__ = _doc or __doc__
__version__ = "0.1.0"
