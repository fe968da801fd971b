"""Symbolic calculus for isometric embeddings C(L) -> C(K) of spaces of
continuous functions on compact spaces.

Submodules: :mod:`ordinal`, :mod:`cardinal`, :mod:`space`, :mod:`region`,
:mod:`funcalc`, :mod:`synthesis`, :mod:`decide`, :mod:`verify`,
:mod:`syntax` and :mod:`cli`.
"""

__version__ = "0.1.0"
