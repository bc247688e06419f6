"""Desk-scale search for CSS-T pairs.

Two candidate sources:

``monomial_lattice``
    every nested pair of decreasing monomial sets in ``m = log2(n)`` variables;
``random``
    uniformly random nested subspaces ``C2 < C1`` drawn from one PCG64 stream.

Each candidate goes through cheap necessary filters (``C2`` even,
``C2`` inside ``C1^perp``, star containment) before the full pair check.
Records carry ``d = min(d1, d2_perp)`` and are ranked by ``(k/n, d/n)``.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

import numpy as np

from .checker import WitnessBudgetExceeded, check_css_t_pair, css_t_sign_offset
from .codes import (
    LinearCode,
    MonomialSet,
    dual,
    graded_monomials,
    is_even,
    min_distance,
    monomial_label,
    monomial_leq,
    monomial_matrix,
    orthogonal,
    star_containment,
)
from .gf2 import BitMatrix, BitVector, rank
from .logical import logical_phases

log = logging.getLogger(__name__)

MAX_RANDOM_N = 32
MAX_LATTICE_M = 5


class Source(str, Enum):
    RANDOM = "random"
    MONOMIAL_LATTICE = "monomial_lattice"


@dataclass
class SearchSpec:
    n: int
    k1_range: tuple[int, int] | None = None
    k2_range: tuple[int, int] | None = None
    generator_source: Source | str = Source.MONOMIAL_LATTICE
    seed: int = 0
    max_candidates: int = 100_000
    output: str | None = None
    min_k: int = 1
    threads: int = 1

    def __post_init__(self):
        self.generator_source = Source(self.generator_source)
        if self.k1_range is None:
            self.k1_range = (1, self.n)
        if self.k2_range is None:
            self.k2_range = (1, self.n - 1)
        lo1, hi1 = self.k1_range
        lo2, hi2 = self.k2_range
        if not (0 <= lo2 <= hi2 and 0 <= lo1 <= hi1 <= self.n):
            raise ValueError("need 0 <= k2 and k1 <= n with ordered ranges")
        if self.generator_source is Source.RANDOM and self.n > MAX_RANDOM_N:
            raise ValueError(f"random mode is limited to n <= {MAX_RANDOM_N}")
        if self.generator_source is Source.MONOMIAL_LATTICE:
            m = self.n.bit_length() - 1
            if self.n != 1 << m or m > MAX_LATTICE_M:
                raise ValueError(f"monomial mode needs n = 2^m with m <= {MAX_LATTICE_M}")

    def allows(self, k1: int, k2: int) -> bool:
        return (self.k1_range[0] <= k1 <= self.k1_range[1] and self.k2_range[0] <= k2 <= self.k2_range[1]
                and k2 < k1 and k1 - k2 >= self.min_k)


@dataclass
class SearchResult:
    spec: dict
    records: list[dict] = field(default_factory=list)
    candidates_examined: int = 0
    budget_exceeded: bool = False

    def to_json(self) -> str:
        body = {"spec": self.spec, "candidates_examined": self.candidates_examined,
                "budget_exceeded": self.budget_exceeded, "records": self.records}
        return json.dumps(body, sort_keys=True, indent=1) + "\n"

    def parameters(self) -> set[tuple[int, int, int]]:
        return {(r["n"], r["k"], r["d"]) for r in self.records}


@dataclass(frozen=True)
class Candidate:
    C1: LinearCode
    C2: LinearCode
    monomials: tuple[str, str] | None = None


# --- candidate sources -----------------------------------------------------

def decreasing_sets(m: int, max_size: int | None = None) -> Iterator[tuple[frozenset, ...]]:
    """All decreasing monomial sets in ``m`` variables, each in graded-lex order."""
    mons = graded_monomials(m, range(m + 1))
    below = [[j for j in range(i) if monomial_leq(mons[j], mons[i])] for i in range(len(mons))]
    cap = len(mons) if max_size is None else max_size
    chosen: list[int] = []
    present = [False] * len(mons)

    def walk(i: int):
        if i == len(mons):
            yield tuple(mons[j] for j in chosen)
            return
        yield from walk(i + 1)
        if len(chosen) < cap and all(present[j] for j in below[i]):
            present[i] = True
            chosen.append(i)
            yield from walk(i + 1)
            chosen.pop()
            present[i] = False

    yield from walk(0)


def _lattice_candidates(spec: SearchSpec) -> Iterator[Candidate]:
    m = spec.n.bit_length() - 1
    sets = [s for s in decreasing_sets(m, spec.k1_range[1]) if s]
    codes = {s: monomial_matrix(MonomialSet(m, s)) for s in sets}
    for s1 in sets:
        if not spec.k1_range[0] <= len(s1) <= spec.k1_range[1]:
            continue
        f1 = set(s1)
        for s2 in sets:
            if not spec.allows(len(s1), len(s2)) or not f1.issuperset(s2):
                continue
            label = (",".join(monomial_label(x) for x in s1), ",".join(monomial_label(x) for x in s2))
            yield Candidate(LinearCode(codes[s1]), LinearCode(codes[s2]), label)


def _full_rank(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    while True:
        M = rng.integers(0, 2, size=(rows, cols), dtype=np.uint8)
        if rank(BitMatrix.from_array(M)) == rows:
            return M


def _random_candidates(spec: SearchSpec, rng: np.random.Generator) -> Iterator[Candidate]:
    pairs = [(k1, k2) for k1 in range(spec.k1_range[0], spec.k1_range[1] + 1)
             for k2 in range(spec.k2_range[0], spec.k2_range[1] + 1) if spec.allows(k1, k2)]
    if not pairs:
        return
    while True:
        k1, k2 = pairs[int(rng.integers(len(pairs)))]
        G1 = _full_rank(rng, k1, spec.n)
        coeff = _full_rank(rng, k2, k1)
        G2 = (coeff.astype(np.int64) @ G1.astype(np.int64)) % 2
        yield Candidate(LinearCode(BitMatrix.from_array(G1)), LinearCode(BitMatrix.from_array(G2)))


# --- evaluation ------------------------------------------------------------

def quick_reject(C1: LinearCode, C2: LinearCode) -> bool:
    """Cheap necessary conditions for a CSS-T pair."""
    return not (is_even(C2) and orthogonal(C2, C1) and star_containment(C1, C2))


def anf_summary(C1: LinearCode, C2: LinearCode, offset: int | None) -> str:
    if offset is None:
        return "no Z-sign assignment found"
    try:
        rep = logical_phases(C1, C2, offset=offset)
    except ValueError as exc:
        return f"not enumerated ({exc})"
    if not rep.uniform_within_coset:
        return "coset weights not uniform"
    if rep.anf is None:
        order = max(8 // np.gcd(int(p), 8) for p in rep.phases)
        return f"diagonal, phase order {order}"
    if not rep.anf.terms:
        return "identity up to global phase"
    return f"degree {rep.anf.degree}: {rep.anf.format()}"


def evaluate(c: Candidate) -> dict | None:
    if quick_reject(c.C1, c.C2):
        return None
    if not check_css_t_pair(c.C1, c.C2, stop_early=True).passed:
        return None
    d1 = min_distance(c.C1)
    d2p = min_distance(dual(c.C2))
    k = c.C1.k - c.C2.k
    try:
        offset = css_t_sign_offset(c.C1, c.C2)
    except WitnessBudgetExceeded:
        offset = None
    rec = {
        "n": c.C1.n, "k1": c.C1.k, "k2": c.C2.k, "k": k,
        "d1": d1, "d2_perp": d2p, "d": min(d1, d2p),
        "C1": [format(v) for v in c.C1.gen.vectors()],
        "C2": [format(v) for v in c.C2.gen.vectors()],
        "z_sign_offset": None if offset is None else str(BitVector(c.C1.n, offset)),
        "logical": anf_summary(c.C1, c.C2, offset),
    }
    if c.monomials:
        rec["C1_monomials"], rec["C2_monomials"] = c.monomials
    return rec


def _rank_key(rec: dict):
    return (-rec["k"], -rec["d"], "".join(rec["C1"]), "".join(rec["C2"]))


def cmd_search(spec: SearchSpec) -> SearchResult:
    """Run a search; the output depends only on ``spec`` (threads included)."""
    spec_dict = {"n": spec.n, "k1_range": list(spec.k1_range), "k2_range": list(spec.k2_range),
                 "generator_source": spec.generator_source.value, "seed": spec.seed,
                 "max_candidates": spec.max_candidates, "min_k": spec.min_k}
    result = SearchResult(spec_dict)
    if spec.generator_source is Source.MONOMIAL_LATTICE:
        source = _lattice_candidates(spec)
    else:
        source = _random_candidates(spec, np.random.Generator(np.random.PCG64(spec.seed)))
    batch = []
    seen = set()
    for cand in source:
        if result.candidates_examined >= spec.max_candidates:
            result.budget_exceeded = spec.generator_source is Source.MONOMIAL_LATTICE
            break
        key = (cand.C1.gen.rows, cand.C2.gen.rows)
        result.candidates_examined += 1
        if key in seen:
            continue
        seen.add(key)
        batch.append(cand)
    if spec.threads > 1:
        with ThreadPoolExecutor(spec.threads) as pool:
            found = list(pool.map(evaluate, batch, chunksize=64))
    else:
        found = [evaluate(c) for c in batch]
    result.records = sorted((r for r in found if r), key=_rank_key)
    if spec.output:
        with open(spec.output, "w") as fh:
            fh.write(result.to_json())
    return result
