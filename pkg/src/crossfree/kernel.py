"""Clique-kernel selection: compiled extension when available, else pure Python.

Set ``CROSSFREE_FORCE_PY=1`` in the environment to force the pure-Python
kernel (used by the benchmark and the cross-check tests). Both kernels
implement the same lexicographic DFS and return identical results.
"""

from __future__ import annotations

import os

from . import _cliquepy

if os.environ.get("CROSSFREE_FORCE_PY") == "1":
    _impl = _cliquepy
else:
    try:
        from . import _cliquec as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _cliquepy

IMPLEMENTATION: str = _impl.IMPLEMENTATION

find_k_clique = _impl.find_k_clique
find_k_clique_in = _impl.find_k_clique_in
has_k_clique_in = _impl.has_k_clique_in
