"""Exact experiments with inexact infinite products of contracting mappings.

Thin re-export of the compiled module; the fallback import covers in-tree
builds where the extension sits on PYTHONPATH instead of inside the package.
"""

try:
    from ._borbit import *  # noqa: F401,F403
    from ._borbit import __version__  # noqa: F401
except ImportError:  # in-tree build: extension next to the package, not inside
    from _borbit import *  # noqa: F401,F403
    from _borbit import __version__  # noqa: F401
