"""Finite, set-valued combinatorics of colored operads over pointed finite sets.

Every structure here is finite and every claim is checked by enumeration at a
bounded size.
"""

__version__ = "0.1.0"
