"""Exhaustive and seeded-random closure spaces for the test corpus."""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from itertools import chain
from typing import Iterator

from .closure import FiniteClosureSpace
from .order import PointUniverse, SetFamily, intersection_closure
from .report import InputError

MAX_ENUMERATION = 4


def point_labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def worker_count() -> int:
    """Worker cap from ``SPSLAB_THREADS``; unset means single-threaded."""
    raw = os.environ.get("SPSLAB_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"SPSLAB_THREADS must be an integer, got {raw!r}") from None


def _families(n: int, lo: int, hi: int) -> list[tuple[int, ...]]:
    full = (1 << n) - 1
    proper = list(range(1, full))
    out = []
    for code in range(lo, hi):
        chosen = [proper[i] for i in range(len(proper)) if code >> i & 1]
        members = set(chosen)
        if all(a & b in members or a & b == 0 for a in chosen for b in chosen):
            out.append((0, *chosen, full))
    return out


def enumerate_closure_spaces(n: int, workers: int | None = None) -> Iterator[FiniteClosureSpace]:
    """Every closure space on ``x1..xn`` exactly once, ordered by family bitmask.

    The candidate range is cut into contiguous chunks, so the merged output
    of several workers is the single-threaded order.
    """
    if not 1 <= n <= MAX_ENUMERATION:
        raise InputError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION}, got {n}")
    universe = PointUniverse(point_labels(n))
    total = 1 << ((1 << n) - 2)
    workers = worker_count() if workers is None else workers
    if workers <= 1:
        families = _families(n, 0, total)
    else:
        step = -(-total // (workers * 4))
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            families = list(chain.from_iterable(pool.map(_families, [n] * len(bounds), *zip(*bounds))))
    for members in families:
        yield FiniteClosureSpace(universe, SetFamily(universe, members))


def random_closure_space(n: int, density: float, seed: int) -> FiniteClosureSpace:
    """Closure space generated from a random family of proper subsets.

    Uses the standard library's Mersenne Twister (``random.Random``), whose
    stream for a given seed is fixed across platforms and Python versions.
    Each nonempty proper subset, in mask order, is kept with probability
    ``density`` before intersection closure.
    """
    if n < 1:
        raise InputError("random spaces need at least one point")
    if not 0.0 <= density <= 1.0:
        raise InputError(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    universe = PointUniverse(point_labels(n))
    picked = [m for m in range(1, (1 << n) - 1) if rng.random() < density]
    closed = intersection_closure(SetFamily(universe, (0, *picked)))
    return FiniteClosureSpace(universe, closed)
