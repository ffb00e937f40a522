"""Seeded corpora of rational (or float) test matrices and vectors.

Entries live on the grid p/q with |value| <= 5 and denominator <= 8 in
rational mode, or uniform floats in the same range.  Everything is driven
by ``random.Random(seed)`` so regeneration from (seed, params) is
bit-identical, which the determinism guarantees of the CLI depend on.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterator, Sequence

from .lattice import LatticeVector
from .operators import RegularOperator
from .reports import canonical_json

GRID_MAX = 5
GRID_MAX_DENOMINATOR = 8

DISTRIBUTIONS = ("rational", "float")
SIGN_MODES = ("positive", "mixed")


def random_rational(rng: Random, positive: bool = False) -> Fraction:
    den = rng.randint(1, GRID_MAX_DENOMINATOR)
    low = 0 if positive else -GRID_MAX * den
    num = rng.randint(low, GRID_MAX * den)
    return Fraction(num, den)


def random_scalar(rng: Random, distribution: str, positive: bool = False):
    if distribution == "rational":
        return random_rational(rng, positive)
    if distribution == "float":
        low = 0.0 if positive else -float(GRID_MAX)
        return rng.uniform(low, float(GRID_MAX))
    raise ValueError(f"unknown distribution: {distribution!r}")


def random_matrix(
    rng: Random,
    rows: int,
    cols: int,
    distribution: str = "rational",
    sign_mode: str = "mixed",
) -> RegularOperator:
    positive = sign_mode == "positive"
    return RegularOperator(
        rows,
        cols,
        [random_scalar(rng, distribution, positive) for _ in range(rows * cols)],
    )


def random_vector(
    rng: Random,
    dim: int,
    distribution: str = "rational",
    sign_mode: str = "positive",
) -> LatticeVector:
    positive = sign_mode == "positive"
    return LatticeVector(
        [random_scalar(rng, distribution, positive) for _ in range(dim)]
    )


@dataclass(frozen=True)
class Corpus:
    """Parameters of a reproducible corpus of (A, B) factor pairs.

    ``dims = (w, x, y, z)`` fixes A to z x y and B to x x w.
    """

    seed: int
    dims: tuple
    count: int
    distribution: str = "rational"
    sign_mode: str = "mixed"

    def __post_init__(self):
        if len(self.dims) != 4 or any(int(d) < 1 for d in self.dims):
            raise ValueError(f"dims must be four integers >= 1, got {self.dims}")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"unknown distribution: {self.distribution!r}")
        if self.sign_mode not in SIGN_MODES:
            raise ValueError(f"unknown sign mode: {self.sign_mode!r}")

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "dims": list(self.dims),
            "count": self.count,
            "distribution": self.distribution,
            "sign_mode": self.sign_mode,
        }


def parse_corpus_spec(spec: str) -> Corpus:
    """Parse "seed=7,dims=2x2x2x2,count=100[,distribution=...][,sign=...]"."""
    fields = {}
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ValueError(f"malformed corpus field: {item!r}")
        key, value = item.split("=", 1)
        fields[key.strip()] = value.strip()
    unknown = set(fields) - {"seed", "dims", "count", "distribution", "sign"}
    if unknown:
        raise ValueError(f"unknown corpus fields: {sorted(unknown)}")
    try:
        seed = int(fields.get("seed", "0"))
        count = int(fields.get("count", "10"))
        dims = tuple(int(d) for d in fields.get("dims", "2x2x2x2").split("x"))
    except ValueError as exc:
        raise ValueError(f"malformed corpus spec {spec!r}: {exc}") from exc
    return Corpus(
        seed=seed,
        dims=dims,
        count=count,
        distribution=fields.get("distribution", "rational"),
        sign_mode=fields.get("sign", "mixed"),
    )


def corpus_pairs(corpus: Corpus) -> Iterator[tuple]:
    """The corpus's (A, B) pairs, in order."""
    rng = Random(corpus.seed)
    w, x, y, z = corpus.dims
    for _ in range(corpus.count):
        A = random_matrix(rng, z, y, corpus.distribution, corpus.sign_mode)
        B = random_matrix(rng, x, w, corpus.distribution, corpus.sign_mode)
        yield A, B


def claim_cases(corpus: Corpus, claim_id: str) -> Iterator[dict]:
    """Per-claim input bundles drawn deterministically from the corpus.

    Positivity requirements (A0 for the positive-left-factor identities,
    B0 for the positive-right-factor ones, T and w throughout) are built in
    by construction, not by rejection sampling.
    """
    rng = Random(corpus.seed)
    w, x, y, z = corpus.dims
    dist = corpus.distribution
    for _ in range(corpus.count):
        if claim_id == "cor22":
            yield {
                "A": random_matrix(rng, z, y, dist, corpus.sign_mode),
                "B": random_matrix(rng, x, w, dist, corpus.sign_mode),
            }
        elif claim_id == "prop21":
            yield {
                "A0": random_matrix(rng, z, y, dist, "positive"),
                "B": random_matrix(rng, x, w, dist, corpus.sign_mode),
                "D": random_matrix(rng, x, w, dist, corpus.sign_mode),
                "T": random_matrix(rng, y, x, dist, "positive"),
                "w": random_vector(rng, w, dist, "positive"),
            }
        elif claim_id == "synnatzschke_a":
            yield {
                "A": random_matrix(rng, z, y, dist, corpus.sign_mode),
                "C": random_matrix(rng, z, y, dist, corpus.sign_mode),
                "B0": random_matrix(rng, x, w, dist, "positive"),
            }
        elif claim_id == "cor23":
            yield {
                "A": random_matrix(rng, z, y, dist, corpus.sign_mode),
                "B": random_matrix(rng, x, w, dist, corpus.sign_mode),
            }
        else:
            raise ValueError(f"no corpus schema for claim {claim_id!r}")


def mixed_dims_pairs(
    seed: int, count: int, dim_choices: Sequence[int] = (1, 2, 3)
) -> Iterator[tuple]:
    """(dims, A, B) with each of w, x, y, z drawn from ``dim_choices``."""
    rng = Random(seed)
    for _ in range(count):
        w, x, y, z = (rng.choice(dim_choices) for _ in range(4))
        A = random_matrix(rng, z, y)
        B = random_matrix(rng, x, w)
        yield (w, x, y, z), A, B


def mixed_dims_prop21_cases(
    seed: int,
    count: int,
    dim_choices: Sequence[int] = (1, 2, 3),
    vectors_per_case: int = 3,
) -> Iterator[dict]:
    """Positive-left-factor bundles with dims drawn per case."""
    rng = Random(seed)
    for _ in range(count):
        w, x, y, z = (rng.choice(dim_choices) for _ in range(4))
        yield {
            "dims": (w, x, y, z),
            "A0": random_matrix(rng, z, y, sign_mode="positive"),
            "B": random_matrix(rng, x, w),
            "D": random_matrix(rng, x, w),
            "T": random_matrix(rng, y, x, sign_mode="positive"),
            "ws": [
                random_vector(rng, w, sign_mode="positive")
                for _ in range(vectors_per_case)
            ],
        }


def square_matrix_cases(
    seed: int,
    size: int,
    count: int,
    vectors_per_matrix: int = 20,
    sign_mode: str = "mixed",
) -> Iterator[dict]:
    """(B, [w...]) bundles of one square matrix and positive test vectors."""
    rng = Random(seed)
    for _ in range(count):
        yield {
            "B": random_matrix(rng, size, size, sign_mode=sign_mode),
            "ws": [
                random_vector(rng, size, sign_mode="positive")
                for _ in range(vectors_per_matrix)
            ],
        }


# ---------------------------------------------------------------------------
# on-disk corpora
# ---------------------------------------------------------------------------


def _write_canonical(obj: dict, path: str) -> bytes:
    data = (canonical_json(obj) + "\n").encode("ascii")
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)
    return data


def generate_corpus(corpus: Corpus, out_dir: str) -> dict:
    """Write the corpus's matrix files plus a manifest with digests.

    Files: A_0000.json, B_0000.json, ... and manifest.json.  Re-running
    with the same parameters reproduces every byte.
    """
    os.makedirs(out_dir, exist_ok=True)
    files = []
    for idx, (A, B) in enumerate(corpus_pairs(corpus)):
        for tag, op in (("A", A), ("B", B)):
            name = f"{tag}_{idx:04d}.json"
            data = _write_canonical(op.to_json(), os.path.join(out_dir, name))
            files.append(
                {"name": name, "sha256": hashlib.sha256(data).hexdigest()}
            )
    manifest = {"params": corpus.to_json(), "files": files}
    _write_canonical(manifest, os.path.join(out_dir, "manifest.json"))
    return manifest
