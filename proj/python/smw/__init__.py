"""Mean width of simplexes inscribed in the unit ball.

Thin wrapper around the compiled extension module.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from ._core import __version__  # noqa: F401
except ImportError:  # build-tree layout: _core sits on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
