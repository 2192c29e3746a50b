"""
Random-word orbit sampling in floating point.
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from rich.console import Console
from rich.progress import track

from src.affine.group import GroupSpec

logger = logging.getLogger(__name__)
_stderr = Console(stderr=True)

BLOCK_SIZE = 8192
THREADS_ENV = "HOMOTHETY_THREADS"


@dataclass
class SampleConfig:
    """Parameters of one sampling run."""
    point: Sequence[float]
    num_words: int = 200_000
    max_word_length: int = 40
    window: float = 3.0
    seed: int = 0
    streams: int = 4

    def __post_init__(self):
        self.point = np.asarray(self.point, dtype=float)
        if self.num_words < 1:
            raise ValueError(f"num_words must be >= 1, got {self.num_words}")
        if self.max_word_length < 1:
            raise ValueError(f"max_word_length must be >= 1, got {self.max_word_length}")
        if not self.window > 0:
            raise ValueError(f"window must be > 0, got {self.window}")
        if self.streams < 1:
            raise ValueError(f"streams must be >= 1, got {self.streams}")


@dataclass
class OrbitSample:
    points: np.ndarray
    discarded: int

    @property
    def retained(self) -> int:
        return len(self.points)


def float_letters(spec: GroupSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Ratios and translations of every generator followed by its inverse."""
    ratios, translations = [], []
    for g in spec.generators:
        for h in (g, g.inverse()):
            ratios.append(float(h.ratio))
            translations.append([float(b) for b in h.translation])
    return np.array(ratios), np.array(translations, dtype=float).reshape(len(ratios), spec.dimension)


def worker_count(streams: int) -> int:
    """Threads to use: HOMOTHETY_THREADS caps the stream count."""
    cap = os.environ.get(THREADS_ENV)
    limit = os.cpu_count() or 1
    if cap:
        try:
            limit = max(1, int(cap))
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV}={cap!r}")
    return max(1, min(streams, limit))


def _run_block(rng: np.random.Generator, x: np.ndarray, ratios: np.ndarray,
               translations: np.ndarray, max_length: int) -> np.ndarray:
    lengths = rng.integers(1, max_length + 1, size=BLOCK_SIZE)
    letters = rng.integers(0, len(ratios), size=(BLOCK_SIZE, max_length))
    points = np.tile(x, (BLOCK_SIZE, 1))
    # the rightmost letter acts first, so steps run from the end of the word
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(max_length - 1, -1, -1):
            active = lengths > step
            chosen = letters[active, step]
            points[active] = ratios[chosen, None] * points[active] + translations[chosen]
    return points


def _run_stream(seed_seq: np.random.SeedSequence, blocks: int, x, ratios,
                translations, max_length) -> List[np.ndarray]:
    rng = np.random.default_rng(seed_seq)
    return [_run_block(rng, x, ratios, translations, max_length) for _ in range(blocks)]


def sample_orbit(spec: GroupSpec, cfg: SampleConfig,
                 max_workers: Optional[int] = None, progress: bool = False) -> OrbitSample:
    """
    Apply cfg.num_words random words to cfg.point.

    Word lengths are uniform in [1, L] and letters uniform over the generators
    and their inverses. Blocks of words are dealt round-robin to independent
    streams spawned from the seed, so the output depends only on
    (seed, streams) and a run with more words extends a run with fewer.
    Points outside the sup-norm window or not finite are discarded.
    """
    x = cfg.point
    if len(x) != spec.dimension:
        raise ValueError(f"Point of dimension {len(x)} for a spec on R^{spec.dimension}")
    ratios, translations = float_letters(spec)
    total_blocks = -(-cfg.num_words // BLOCK_SIZE)
    per_stream = [len(range(s, total_blocks, cfg.streams)) for s in range(cfg.streams)]
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.streams)

    workers = max_workers or worker_count(cfg.streams)
    logger.debug(f"Sampling {total_blocks} blocks on {cfg.streams} streams, {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_stream, seeds[s], per_stream[s], x, ratios, translations,
                        cfg.max_word_length)
            for s in range(cfg.streams)
        ]
        if progress:
            futures = track(futures, description="Sampling streams...", console=_stderr)
        results = [f.result() for f in futures]

    ordered = [results[b % cfg.streams][b // cfg.streams] for b in range(total_blocks)]
    points = np.concatenate(ordered)[: cfg.num_words]
    keep = np.all(np.isfinite(points), axis=1) & (np.max(np.abs(points), axis=1) <= cfg.window)
    discarded = int(np.count_nonzero(~keep))
    retained = points[keep]
    logger.info(f"Retained {len(retained)} of {cfg.num_words} orbit points")
    if discarded:
        logger.debug(f"Discarded {discarded} points outside the window")
    return OrbitSample(retained, discarded)
