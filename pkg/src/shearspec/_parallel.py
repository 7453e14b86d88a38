"""Order-preserving thread fan-out capped by SHEARSPEC_THREADS."""
import os
from concurrent.futures import ThreadPoolExecutor

from .errors import DomainError


def thread_cap():
    raw = os.environ.get("SHEARSPEC_THREADS", "").strip()
    if not raw:
        return min(8, os.cpu_count() or 1)
    try:
        return max(1, int(raw))
    except ValueError:
        raise DomainError(f"SHEARSPEC_THREADS must be an integer, got {raw!r}") from None


def pmap(fn, items, threads=None):
    """``[fn(x) for x in items]``, possibly computed concurrently."""
    items = list(items)
    n = threads or thread_cap()
    if n == 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
