# encoding: utf-8

import functools
import itertools
from typing import Any, Callable, Iterable, Iterator, Sequence, Tuple, TypeVar

T = TypeVar("T")


def lazy_property(f: Callable[..., Any]):
    return property(functools.lru_cache()(f))


def bits_of(mask: int) -> Iterator[int]:
    """Yield the indices of the bits set in ``mask``, in increasing order.

    Parameters
    ----------
    mask : int
        Non-negative integer used as a bit set

    Returns
    -------
    Iterator[int]
        Indices of the set bits
    """
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets_by_size(items: Sequence[T], max_size: int = None) -> Iterator[Tuple[T, ...]]:
    """Yield the subsets of ``items`` by increasing size, lexicographically within a size.

    Parameters
    ----------
    items : Sequence[T]
        Elements of the ground set
    max_size : int, optional
        Largest subset size to yield. Default is None, meaning ``len(items)``.

    Returns
    -------
    Iterator[Tuple[T, ...]]
        Subsets as tuples preserving the order of ``items``
    """
    max_size = len(items) if max_size is None else min(max_size, len(items))
    for size in range(max_size + 1):
        yield from itertools.combinations(items, size)


def first(iterable: Iterable[T], default: T = None) -> T:
    return next(iter(iterable), default)
