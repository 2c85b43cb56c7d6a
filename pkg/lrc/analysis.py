# lrc/analysis.py

from __future__ import annotations
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from lrc.code_params import CodeSpec, ambient_distance_report, min_cover_size
from lrc.codec import Codeword, local_recover
from lrc.config import DEFAULTS
from lrc.errors import InvariantViolation, TooLarge

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceReport:
    """Exhaustive minimum distance; witness messages are message integers (see codec.msg_from_int)."""
    min_distance: int
    lower_bound:  Optional[int]
    witness_pair: Tuple[int, int]
    enumerated:   int


def hamming(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"[hamming] lengths {len(a)} != {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def _guard(spec: CodeSpec, force: bool, max_messages: int) -> int:
    size = spec.size
    if size > max_messages and not force:
        raise TooLarge(f"[analysis] {size} messages exceed {max_messages}; pass force to run anyway")
    return size


def codeword_matrix(spec: CodeSpec) -> np.ndarray:
    """
    Row v is the flattened codeword of message integer v, v = 0 .. M^(r(s+1)) - 1.

    Goodness is not required, so under-provisioned specs can be inspected too.
    """
    size = spec.size
    q = spec.coeff_modulus
    wide = any(sp.p >= 2 ** 31 for sp in spec.primes) or size >= 2 ** 62
    dtype = object if wide else np.int64
    vs = np.arange(size, dtype=dtype)
    U = [(vs // q ** t) % q for t in range(spec.r)]

    cols = []
    for sp in spec.primes:
        reduced = [u % sp.p for u in U]
        for beta in sp.roots:
            acc = np.zeros(size, dtype=dtype)
            power = 1
            for u in reduced:
                acc = (acc + u * power) % sp.p
                power = power * beta % sp.p
            cols.append(acc)
    return np.stack(cols, axis=1)


def _row_to_codeword(spec: CodeSpec, row: Sequence[int]) -> Codeword:
    width = spec.r + 1
    symbols = tuple(tuple(int(c) for c in row[i * width:(i + 1) * width]) for i in range(spec.ell))
    mask = tuple((True,) * width for _ in range(spec.ell))
    return Codeword(tuple(sp.p for sp in spec.primes), symbols, mask)


def _ranges(total: int, threads: int) -> List[range]:
    threads = max(1, threads)
    step = -(-total // threads)
    return [range(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_parts(fn, parts: List[range], threads: int) -> List[Any]:
    if threads <= 1 or len(parts) == 1:
        return [fn(part) for part in parts]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, parts))


def brute_min_distance(spec: CodeSpec,
                       *,
                       force: bool = False,
                       threads: int = DEFAULTS["default_threads"],
                       progress: bool = False,
                       max_messages: int = DEFAULTS["analysis_max_messages"]) -> DistanceReport:
    """
    Exact minimum distance over all pairs of codewords (no early exit).

    The witness is the lexicographically first pair (i, j), i < j, reaching the minimum,
    independent of the thread count.
    """
    size = _guard(spec, force, max_messages)
    C = codeword_matrix(spec)

    def scan(part: range) -> Tuple[int, int, int]:
        best = (spec.n + 1, -1, -1)
        for i in tqdm(part, disable=not progress, desc="pairs", leave=False):
            if i + 1 >= size:
                break
            dists = (C[i + 1:] != C[i]).sum(axis=1)
            j = int(np.argmin(dists))
            cand = (int(dists[j]), i, i + 1 + j)
            if cand < best:
                best = cand
        return best

    d, i, j = min(_run_parts(scan, _ranges(size, threads), threads))
    report = DistanceReport(min_distance=d, lower_bound=spec.dist_lb, witness_pair=(i, j), enumerated=size)
    if spec.good and spec.dist_lb is not None and d < spec.dist_lb:
        raise InvariantViolation(f"[analysis] min distance {d} below the lower bound {spec.dist_lb}")
    logger.info(f"[analysis] min distance {d} (bound {spec.dist_lb}) over {size} codewords")
    return report


def distinct_codewords(spec: CodeSpec,
                       *,
                       force: bool = False,
                       max_messages: int = DEFAULTS["analysis_max_messages"]) -> int:
    _guard(spec, force, max_messages)
    return int(np.unique(codeword_matrix(spec), axis=0).shape[0])


def brute_injectivity(spec: CodeSpec,
                      *,
                      force: bool = False,
                      max_messages: int = DEFAULTS["analysis_max_messages"]) -> bool:
    """True iff all M^(r(s+1)) messages give distinct codewords."""
    distinct = distinct_codewords(spec, force=force, max_messages=max_messages)
    logger.info(f"[analysis] {distinct} distinct codewords of {spec.size}")
    return distinct == spec.size


def check_locality(spec: CodeSpec, cw: Codeword) -> List[Tuple[int, int]]:
    """Coordinates whose local repair (with only that slot erased) disagrees with cw."""
    bad = []
    for g in range(spec.ell):
        for k in range(spec.r + 1):
            if local_recover(spec, cw.erase(g, k), g, k) != cw.symbols[g][k]:
                bad.append((g, k))
    return bad


def locality_exhaustive(spec: CodeSpec,
                        *,
                        force: bool = False,
                        threads: int = DEFAULTS["default_threads"],
                        progress: bool = False,
                        max_messages: int = DEFAULTS["analysis_max_messages"]) -> bool:
    """Every message x every group x every slot: local repair returns the erased symbol."""
    size = _guard(spec, force, max_messages)
    C = codeword_matrix(spec)

    def scan(part: range) -> Optional[int]:
        for v in tqdm(part, disable=not progress, desc="locality", leave=False):
            if check_locality(spec, _row_to_codeword(spec, C[v])):
                return v
        return None

    failures = [v for v in _run_parts(scan, _ranges(size, threads), threads) if v is not None]
    if failures:
        logger.warning(f"[analysis] local repair failed for message {failures[0]}")
        return False
    logger.info(f"[analysis] {size * spec.n} local recoveries matched")
    return True


def analyze(spec: CodeSpec, **kwargs) -> Dict[str, Any]:
    """Full report: exhaustive distance, injectivity and the closed-form bounds."""
    dist = brute_min_distance(spec, **kwargs)
    out = {
        **report_to_json(dist),
        "n":              spec.n,
        "m":              spec.m,
        "distinct":       distinct_codewords(
            spec,
            force=kwargs.get("force", False),
            max_messages=kwargs.get("max_messages", DEFAULTS["analysis_max_messages"]),
        ),
        "size":           spec.size,
    }
    if spec.good:
        ambient = ambient_distance_report(spec)
        out["ambient_tight"] = ambient.tight
        out["min_cover"] = min_cover_size(spec.field, spec.r, spec.s, spec.M, spec.primes)
    return out


def report_to_json(report: DistanceReport) -> Dict[str, Any]:
    return {
        "min_distance": report.min_distance,
        "lower_bound":  report.lower_bound,
        "witness_pair": list(report.witness_pair),
        "enumerated":   report.enumerated,
    }


def report_table(report: Dict[str, Any]) -> pd.DataFrame:
    return pd.DataFrame([{"quantity": k, "value": v} for k, v in report.items()])
