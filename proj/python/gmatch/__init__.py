"""Graph edit distance, node contraction, centrality and geometric graph matching."""

from ._core import *  # noqa: F401,F403
from ._core import GmatchError, InvalidArgument, ParseError  # noqa: F401

__version__ = "0.1.0"
