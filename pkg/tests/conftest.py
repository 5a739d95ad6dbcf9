import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import CORPUS_CELLS, CORPUS_WEIGHTS, random_unfolding  # noqa: E402

from diminimal import RealizationCertificate, RootedTree, realize_family, seed


@dataclass(frozen=True)
class CorpusRun:
    tree: RootedTree
    cert: RealizationCertificate


@dataclass(frozen=True)
class Corpus:
    runs: tuple[CorpusRun, ...]
    elapsed: float


@pytest.fixture(scope="session")
def corpus() -> Corpus:
    """The shared random-unfolding corpus: 204 trees drawn from all three
    families, each realized with a minimum-distinct-eigenvalue matrix.
    Built once; several acceptance criteria reuse it."""
    rng = random.Random(20260815)
    runs = []
    start = time.perf_counter()
    for i, (fam, d) in enumerate(CORPUS_CELLS):
        t = random_unfolding(seed(fam, d), rng, rounds=rng.randint(0, 6))
        alpha, beta = CORPUS_WEIGHTS[i % len(CORPUS_WEIGHTS)]
        cert = realize_family(t, alpha, beta)
        runs.append(CorpusRun(t, cert))
    elapsed = time.perf_counter() - start
    return Corpus(tuple(runs), elapsed)
