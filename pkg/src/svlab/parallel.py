"""Thread cap from the ``SVLAB_THREADS`` environment variable."""

import os
from concurrent.futures import ThreadPoolExecutor

from svlab.errors import SvlabError

ENV_VAR = "SVLAB_THREADS"


def thread_count() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise SvlabError(f"{ENV_VAR} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise SvlabError(f"{ENV_VAR} must be a positive integer, got {raw!r}")
    return n


def ordered_map(fn, items):
    """``list(map(fn, items))``, threaded when allowed; order is preserved."""
    items = list(items)
    n = thread_count()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
