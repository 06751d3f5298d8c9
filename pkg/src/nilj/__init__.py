"""nilj: exact classification toolkit for small nilpotent Jordan algebras.

Everything is exact (rationals or prime fields), immutable, and pure; see the
README for the module map and the command-line interface.
"""

__version__ = "0.1.0"
