"""Configuration classes for tropcrit pipelines."""

import asyncio
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from asgiref.sync import sync_to_async

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TropcritConf:
    """
    Process-wide numeric and output settings.

    Attributes:
        order: default truncation order for Novikov series
        zero_tol: a complex sum at or below zero_tol times its largest summand is zero
        seed_tol: residual accepted for a residue-field seed
        max_newton_steps: cap on Newton iterations in one lift
        threads: worker cap for parallel maps (None: TROPCRIT_THREADS or cpu count)
        svg_box: side of the square SVG drawing area in px
        endpoint_radius: radius of node circles in px
        grid_step: step of the completeness grid
    """

    order: Fraction = Fraction(5)
    zero_tol: float = 1e-10
    seed_tol: float = 1e-10
    max_newton_steps: int = 12
    threads: int | None = None
    svg_box: int = 400
    endpoint_radius: int = 4
    grid_step: Fraction = Fraction(1, 64)

    def get_threads(self) -> int:
        """Resolve the worker cap, with environment and cpu defaults."""
        if self.threads is not None:
            return max(1, self.threads)
        env = os.environ.get("TROPCRIT_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                logger.warning("Ignoring non-integer TROPCRIT_THREADS=%r", env)
        return min(8, os.cpu_count() or 1)


@dataclass(frozen=True)
class ProbeConf:
    """Settings for one dimension probe."""

    samples: int = 5
    seed: int = 0
    order: Fraction | None = None        # None: use TropcritConf.order
    restarts: int = 24                   # damped Newton starts for multi-unknown seeds
    sample_parts: int = 12               # sample weights are multiples of 1/sample_parts

    def get_order(self) -> Fraction:
        return self.order if self.order is not None else get_conf().order


_conf: TropcritConf | None = None


def _conf_from_env() -> TropcritConf:
    conf = TropcritConf()
    order = os.environ.get("TROPCRIT_ORDER")
    if order:
        try:
            conf = replace(conf, order=Fraction(order))
        except (ValueError, ZeroDivisionError):
            logger.warning("Ignoring malformed TROPCRIT_ORDER=%r", order)
    return conf


def get_conf() -> TropcritConf:
    """Get the shared TropcritConf, created from the environment on first use."""
    global _conf
    if _conf is None:
        _conf = _conf_from_env()
    return _conf


def configure(**changes: Any) -> TropcritConf:
    """Replace fields of the shared conf. Returns the new conf."""
    global _conf
    _conf = replace(get_conf(), **changes)
    return _conf


def reset_conf():
    """Drop the shared conf so the next get_conf() rereads the environment."""
    global _conf
    _conf = None


def run_parallel(func: Callable[[Any], Any], items: Iterable[Any], threads: int | None = None) -> list:
    """
    Map a blocking function over items on a capped thread pool.

    Results come back in input order. Runs inline for a single worker or a
    single item, so callers get the same answers either way.
    """
    items: Sequence = list(items)
    workers = threads if threads is not None else get_conf().get_threads()
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    async def gather():
        loop = asyncio.get_running_loop()
        loop.set_default_executor(ThreadPoolExecutor(max_workers=workers))
        task = sync_to_async(func, thread_sensitive=False)
        return await asyncio.gather(*(task(item) for item in items))

    return list(asyncio.run(gather()))
