from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from paraprod.config import get_config


T = TypeVar('T')
R = TypeVar('R')


def thread_count(threads: Optional[int] = None) -> int:
    limit = max(1, get_config().threads)
    return limit if threads is None else max(1, min(threads, limit))


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> List[R]:
    """fn over items on a thread pool capped by the configured thread count.

    Results come back in input order.
    """
    items = list(items)
    n = thread_count(threads)
    if n == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=n) as executor:
        return list(executor.map(fn, items))
