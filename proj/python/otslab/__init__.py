"""Pseudo-spectral laboratory for the fractional hyperbolic-parabolic
chemotaxis system on the 1-D torus."""

try:
    from ._otslab import *  # noqa: F401,F403  (installed layout)
    from ._otslab import __version__  # noqa: F401
except ImportError:  # in-tree build: the module sits next to the package on sys.path
    from _otslab import *  # noqa: F401,F403
    from _otslab import __version__  # noqa: F401
