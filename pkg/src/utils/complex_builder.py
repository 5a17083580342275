"""
Complex Builder
Cached and parallel construction of bigraded diagram complexes
"""
import logging
from multiprocessing import Pool
from pathlib import Path
from typing import Optional, Union

from diskcache import Cache

from src.algebra.bracket_diagrams import Variant, enumerate_basis
from src.algebra.free_superalgebra import ParityMode
from src.homology.homology_engine import BigradedComplex, boundary_matrix, build_complex, default_top

logger = logging.getLogger(__name__)


class ComplexBuilder:
    """Build complexes once per (variant, parity, bounds, differential)"""

    def __init__(self, workers: int = 1, cache_dir: Optional[Union[str, Path]] = None,
                 time_budget: float = 0.0):
        self.workers = max(1, int(workers))
        self.time_budget = time_budget
        self.cache = Cache(str(cache_dir)) if cache_dir else None

    @classmethod
    def from_config(cls, config, workers: Optional[int] = None,
                    time_budget: Optional[float] = None) -> "ComplexBuilder":
        cache_dir = config.CACHE_DIR if config.CACHE_ENABLED else None
        return cls(config.WORKERS if workers is None else workers, cache_dir,
                   config.TIME_BUDGET if time_budget is None else time_budget)

    @staticmethod
    def cache_key(variant: Variant, mode: ParityMode, i_max: int, j_max: Optional[int],
                  differential: str) -> str:
        return f"complex:{Variant(variant).value}:{ParityMode(mode).value}:{i_max}:{j_max}:{differential}"

    def build(self, variant: Variant, mode: ParityMode, i_max: int, j_max: Optional[int] = None,
              differential: str = "full") -> BigradedComplex:
        variant, mode = Variant(variant), ParityMode(mode)
        key = self.cache_key(variant, mode, i_max, j_max, differential)
        if self.cache is not None and key in self.cache:
            logger.info("Cache hit for %s", key)
            return self.cache[key]
        if self.workers == 1 or self.time_budget:
            cx = build_complex(variant, mode, i_max, j_max, differential, self.time_budget)
        else:
            cx = self._build_parallel(variant, mode, i_max, j_max, differential)
        if self.cache is not None and not cx.truncated:
            self.cache.set(key, cx)
        return cx

    def _build_parallel(self, variant: Variant, mode: ParityMode, i_max: int,
                        j_max: Optional[int], differential: str) -> BigradedComplex:
        """One job per bidegree; results are assembled in bidegree order"""
        cx = BigradedComplex(variant, mode, differential)
        jobs = {}
        with Pool(self.workers) as pool:
            for i in range(i_max + 1):
                top = default_top(variant, i) if j_max is None else j_max
                cx.top[i] = top
                for j in range(top + 2):
                    cx.bases[(i, j)] = enumerate_basis(variant, mode, i, j)
                for j in range(top + 1):
                    jobs[(i, j)] = pool.apply_async(boundary_matrix, (variant, mode, i, j, differential))
            pool.close()
            pool.join()
        for bidegree in sorted(jobs):
            cx.matrices[bidegree] = jobs[bidegree].get()
        logger.info("Built %s %s complex through complexity %d with %d workers",
                    variant.value, mode.value, i_max, self.workers)
        return cx

    def close(self) -> None:
        if self.cache is not None:
            self.cache.close()
