"""
Brute-force word enumeration over a group spec.

Breadth-first search in the Cayley graph: every distinct group element
reachable by a word of length <= L over the generators and their inverses is
evaluated exactly and bucketed into Gamma_G (centers), gamma_G / delta_G
(images of 0 under symmetries / strict symmetries), G_1(0) (translation
parts) and Lambda_G (ratios), each with a witness word.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from rich.console import Console
from rich.progress import track

from src.affine.group import GroupSpec, Word
from src.affine.maps import AffineMap, MapKind, Point
from src.errors import BudgetExceededError
from src.field.scalar import FieldScalar, format_vector
from src.simulator.sampler import worker_count

logger = logging.getLogger(__name__)
_stderr = Console(stderr=True)

MAX_WORD_LENGTH = 12
MAX_ELEMENTS = 200_000
SHARDS = 4


@dataclass
class OmegaSample:
    """Points and ratios found by enumerating words of length <= word_length."""
    word_length: int
    gamma_centers: Dict[Tuple, Tuple[Point, Word]] = field(default_factory=dict)
    gamma0_points: Dict[Tuple, Tuple[Point, Word]] = field(default_factory=dict)
    delta_points: Dict[Tuple, Tuple[Point, Word]] = field(default_factory=dict)
    translation_points: Dict[Tuple, Tuple[Point, Word]] = field(default_factory=dict)
    ratios: Dict[Tuple, Tuple[FieldScalar, Word]] = field(default_factory=dict)
    elements: Dict[Tuple, Tuple[AffineMap, Word, int]] = field(default_factory=dict)

    def record(self, f: AffineMap, word: Word, length: int):
        self.elements[f.key()] = (f, word, length)
        self.ratios.setdefault(f.ratio.coeffs, (f.ratio, word))
        if f.kind == MapKind.HOMOTHETY:
            center = f.center
            self.gamma_centers.setdefault(_point_key(center), (center, word))
            return
        image = f.translation
        self.gamma0_points.setdefault(_point_key(image), (image, word))
        if f.kind == MapKind.SYMMETRY:
            self.delta_points.setdefault(_point_key(image), (image, word))
        else:
            self.translation_points.setdefault(_point_key(image), (image, word))

    def centers(self) -> List[Point]:
        return [p for p, _ in self.gamma_centers.values()]

    def omega_points(self) -> List[Point]:
        return self.centers() + [p for p, _ in self.gamma0_points.values()]

    def to_dict(self, names) -> Dict[str, Any]:
        def points(bucket):
            return [
                {"point": format_vector(p), "word": w.render(names), "letters": w.to_list()}
                for p, w in bucket.values()
            ]

        return {
            "max_word_length": self.word_length,
            "elements": len(self.elements),
            "gamma_centers": points(self.gamma_centers),
            "gamma0_points": points(self.gamma0_points),
            "delta_points": points(self.delta_points),
            "translation_points": points(self.translation_points),
            "ratios": [
                {"ratio": r.format(), "word": w.render(names), "letters": w.to_list()}
                for r, w in self.ratios.values()
            ],
        }


def _point_key(p: Point) -> Tuple:
    return tuple(c.coeffs for c in p)


def _expand_shard(shard, letters, known) -> List[Tuple[AffineMap, List[Tuple[int, int]]]]:
    """Extend every word of a shard by one letter; drops elements seen at shorter lengths."""
    found = []
    for f, steps in shard:
        for index, unit, letter in letters:
            h = f.compose(letter)
            if h.key() not in known:
                found.append((h, steps + [(index, unit)]))
    return found


def enumerate_words(
    spec: GroupSpec,
    max_length: int,
    max_elements: int = MAX_ELEMENTS,
    length_cap: int = MAX_WORD_LENGTH,
    progress: bool = False,
    shards: int = SHARDS,
) -> OmegaSample:
    """
    Enumerate all group elements given by words of length <= max_length.

    Each level's frontier is cut into prefix shards expanded on a thread
    pool; the shard results are merged in frontier order, so the witnesses
    do not depend on the number of threads.

    Args:
        spec: Group spec
        max_length: L, the maximal word length
        max_elements: Cap on the number of distinct elements
        length_cap: Largest admissible L
        shards: Number of frontier shards per level

    Returns:
        OmegaSample with witnesses

    Raises:
        BudgetExceededError: L above the cap or too many elements
    """
    if max_length < 0 or max_length > length_cap:
        raise BudgetExceededError(f"Word length {max_length} outside 0..{length_cap}")
    sample = OmegaSample(word_length=max_length)
    identity = AffineMap.identity(spec.ctx, spec.dimension)
    sample.record(identity, Word(), 0)
    frontier: List[Tuple[AffineMap, List[Tuple[int, int]]]] = [(identity, [])]
    letters = [
        (i, unit, g if unit > 0 else g.inverse())
        for i, g in enumerate(spec.generators)
        for unit in (1, -1)
    ]

    lengths = range(1, max_length + 1)
    if progress:
        lengths = track(lengths, description="Enumerating words...", console=_stderr)
    with ThreadPoolExecutor(max_workers=worker_count(shards)) as pool:
        for length in lengths:
            size = -(-len(frontier) // shards)
            parts = [frontier[i:i + size] for i in range(0, len(frontier), size)]
            known = frozenset(sample.elements)
            expanded = pool.map(_expand_shard, parts, [letters] * len(parts),
                                [known] * len(parts))

            next_frontier = []
            for found in expanded:
                for h, word_steps in found:
                    if h.key() in sample.elements:
                        continue
                    sample.record(h, Word.from_steps(word_steps), length)
                    next_frontier.append((h, word_steps))
                    if len(sample.elements) > max_elements:
                        raise BudgetExceededError(
                            f"More than {max_elements} elements at word length {length}"
                        )
            logger.debug(f"Length {length}: {len(next_frontier)} new elements "
                         f"from {len(parts)} shards")
            frontier = next_frontier
            if not frontier:
                break
    logger.info(
        f"Enumerated {len(sample.elements)} elements up to length {max_length}: "
        f"{len(sample.gamma_centers)} centers, {len(sample.gamma0_points)} symmetry images"
    )
    return sample
