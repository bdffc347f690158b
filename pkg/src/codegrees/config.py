from __future__ import annotations

import contextlib

DEFAULT_CAPACITY = 100_000
DEFAULT_SEED = 20240917

_capacity = DEFAULT_CAPACITY
_seed = DEFAULT_SEED


def capacity() -> int:
    return _capacity


def set_capacity(n: int) -> None:
    global _capacity
    if n < 1:
        raise ValueError("capacity must be at least 1")
    _capacity = int(n)


@contextlib.contextmanager
def capacity_limit(n: int):
    old = _capacity
    set_capacity(n)
    try:
        yield
    finally:
        set_capacity(old)


def seed() -> int:
    """Seed for randomized fallbacks (the module irreducibility test)."""
    return _seed


def set_seed(n: int) -> None:
    global _seed
    _seed = int(n)
