"""
Order-preserving worker pool.

Enumeration chunks and merge neighborhoods are pure functions of their input,
so results are collected in submission order and the output never depends on
the worker count.
"""

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: int = 1,
    desc: str = "",
    total: int | None = None,
    chunksize: int = 1,
    progress: bool = True,
) -> Iterator[R]:
    """
    Map func over items, yielding results in input order.

    Args:
        func: Picklable top-level function
        items: Inputs
        workers: 1 runs inline, more uses a process pool
        desc: tqdm label
        total: Item count for the progress bar when items is a generator
        chunksize: Items per inter-process message
        progress: Show a tqdm bar

    Yields:
        func(item) for each item, in order
    """
    if workers <= 1:
        results = map(func, items)
        yield from tqdm(results, desc=desc, total=total, disable=not progress, leave=False)
        return

    pool = ProcessPoolExecutor(max_workers=workers)
    try:
        results = pool.map(func, items, chunksize=chunksize)
        yield from tqdm(results, desc=desc, total=total, disable=not progress, leave=False)
    finally:
        # Queued chunks are dropped when the consumer stops early
        pool.shutdown(wait=True, cancel_futures=True)


__all__ = ["ordered_map"]
