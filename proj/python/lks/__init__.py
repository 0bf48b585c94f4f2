"""Tree embedding in skewed host graphs.

Rational arguments accept ints, Fractions or "p/q" strings. Rationals come
back as Fractions, except inside JSON reports where they stay "p/q" strings.
"""

from fractions import Fraction

try:
    from ._lks import *  # noqa: F401,F403
    from . import _lks
except ImportError:  # build tree layout: the extension sits next to, not inside, the package
    from _lks import *  # noqa: F401,F403
    import _lks


def rational(s):
    """Parse a "p/q" string from a report into a Fraction."""
    return Fraction(s)


__all__ = [n for n in dir(_lks) if not n.startswith("_")] + ["rational"]
