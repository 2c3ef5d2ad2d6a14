"""Kernel selection: compiled bitset core with pure-Python fallback.

The compiled extension works on 64-bit masks, so it handles graphs with
up to 63 vertices; anything larger (irrelevant at oracle scale, but the
API does not forbid it) is routed to the pure implementation per call.
Set TOPSTRUCT_PURE=1 to force the fallback.
"""

import os

from . import pure as _pure

if os.environ.get("TOPSTRUCT_PURE"):
    _impl = _pure
else:
    try:
        from . import _fast as _impl
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND

_COMPILED_LIMIT = 63


def _n_from_adj(adj):
    return len(adj) - 1


def reachable(adj, start, allowed):
    if _impl is not _pure and _n_from_adj(adj) > _COMPILED_LIMIT:
        return _pure.reachable(adj, start, allowed)
    return _impl.reachable(adj, start, allowed)


def components(adj, mask):
    if _impl is not _pure and _n_from_adj(adj) > _COMPILED_LIMIT:
        return _pure.components(adj, mask)
    return _impl.components(adj, mask)


def is_connected(adj, mask):
    if _impl is not _pure and _n_from_adj(adj) > _COMPILED_LIMIT:
        return _pure.is_connected(adj, mask)
    return _impl.is_connected(adj, mask)


def max_disjoint_paths(adj, n, src, dst, allowed):
    if _impl is not _pure and n > _COMPILED_LIMIT:
        return _pure.max_disjoint_paths(adj, n, src, dst, allowed)
    return _impl.max_disjoint_paths(adj, n, src, dst, allowed)
