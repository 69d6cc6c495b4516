"""Independent verification of base cycle sets and their developments.

check_base applies the base cycle criterion: the differences of all base
cycles cover (Z_M x Z_ell) minus (0,0) exactly once and every cycle is
transversal. develop turns a checked base set into its 2-factors, and
check_factorization validates them against the definition of a
2-factorization of K_v with an explicit edge-presence array.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from itertools import islice

import numpy as np
from tqdm import tqdm

from CyclicHWP.classes.classes import CoverageReport, Factor, Factorization
from CyclicHWP.errors import DevelopBeforeCheck, IndexOutOfRange, LengthMismatch
from CyclicHWP.functions.core import differences_of, is_transversal, unpack
from CyclicHWP.functions.helper import progress_disabled

logger = logging.getLogger(__name__)

MAX_WORKERS = 8
# factorization reports keep at most this many offending edges
REPORT_LIMIT = 10000


def _cycle_problems(cycle, kind, label, params):
    """Structure and transversality problems of one base cycle"""
    length = params.ell if kind == "short" else params.M
    if len(cycle) != length:
        return [f"{label}: length {len(cycle)}, expected {length}"], []
    if len(set(cycle.vertices)) != len(cycle):
        return [f"{label}: repeated vertex"], []
    try:
        if not is_transversal(cycle, kind, params):
            return [], [label]
    except LengthMismatch as e:
        return [f"{label}: {e}"], []
    return [], []


def check_base(base):
    """Exact difference accounting over all nonzero elements of Z_M x Z_ell"""
    params = base.params
    structure, transversality = [], []

    if len(base.shorts) != params.x:
        structure.append(f"{len(base.shorts)} short base cycles, expected {params.x}")
    if len(base.longs) != params.y:
        structure.append(f"{len(base.longs)} long base cycles, expected {params.y}")

    for kind, cycles in (("short", base.shorts), ("long", base.longs)):
        for index, cycle in enumerate(cycles):
            problems, failures = _cycle_problems(cycle, kind, f"{kind}[{index}]", params)
            structure += problems
            transversality += failures

    multiset = differences_of(base.cycles(), params)
    duplicated = multiset.duplicated()
    if multiset.count(0, 0):
        structure.append("difference (0,0) occurs")
        duplicated = [d for d in duplicated if d != (0, 0)]

    report = CoverageReport(
        missing=multiset.missing(),
        duplicated=duplicated,
        transversality_failures=transversality,
        structure_failures=structure,
    )
    base.report = report
    logger.info("base criterion for %s: %s", params, report)
    return report


def factor_count(params):
    return params.r + params.r_prime


def factor_of(base, index):
    """The index-th factor: shorts first, ordered by base cycle then translate"""
    params = base.params
    M, ell = params.M, params.ell
    if not 0 <= index < factor_count(params):
        raise IndexOutOfRange(f"factor index must lie in [0, {factor_count(params) - 1}], got {index}")

    if index < params.r:
        source, i = divmod(index, ell)
        cycle = base.shorts[source]
        a = (cycle.firsts()[None, :] + np.arange(M)[:, None]) % M
        b = np.broadcast_to((cycle.seconds() + i) % ell, a.shape)
        return Factor("short", a * ell + b, params, origin=("short", source, (0, i)))

    source, j = divmod(index - params.r, M)
    cycle = base.longs[source]
    b = (cycle.seconds()[None, :] + np.arange(ell)[:, None]) % ell
    a = np.broadcast_to((cycle.firsts() + j) % M, b.shape)
    return Factor("long", a * ell + b, params, origin=("long", source, (j, 0)))


def develop(base):
    """Lazy orbit development of a base set that passed check_base"""
    if base.report is None or not base.report.ok:
        raise DevelopBeforeCheck("develop needs a base set that passed check_base")
    return Factorization(base, factor_of)


def translate_factor(factor, g, params):
    """Translate a factor by g, given as a pair (a, b) or as an element of Z_v"""
    if isinstance(g, (int, np.integer)):
        g = unpack(int(g), params)
    ga, gb = g
    ids = factor.ids
    a = (ids // params.ell + ga) % params.M
    b = (ids % params.ell + gb) % params.ell
    return Factor(factor.kind, a * params.ell + b, params, origin=(factor.origin, (ga, gb)))


def edge_index(u, w, v):
    """Position of the unordered pair {u, w} in the list of all pairs of [0, v)"""
    low = np.minimum(u, w).astype(np.int64)
    high = np.maximum(u, w).astype(np.int64)
    return low * (2 * v - low - 1) // 2 + (high - low - 1)


def factor_edges(factor, params):
    ids = factor.ids
    return edge_index(ids, np.roll(ids, -1, axis=1), params.v).ravel()


def _factor_problem(factor, params):
    """None when the factor is a spanning union of cycles of its tagged type"""
    rows, length = factor.ids.shape
    expected = (params.M, params.ell) if factor.kind == "short" else (params.ell, params.M)
    if (rows, length) != expected:
        return f"{factor}: {rows} cycles of length {length}, expected {expected[0]} of length {expected[1]}"
    seen = np.bincount(factor.ids.ravel(), minlength=params.v)
    if len(seen) != params.v or not np.all(seen == 1):
        return f"{factor}: not a spanning set of vertex-disjoint cycles"
    return None


def _examine(factor, params):
    problem = _factor_problem(factor, params)
    if problem is not None:
        return factor.kind, problem, None
    return factor.kind, None, factor_edges(factor, params)


def worker_count(workers=None):
    if workers is not None:
        return max(1, workers)
    if os.environ.get("CYCLICHWP_SINGLE_THREAD", "0") not in ("", "0"):
        return 1
    return min(MAX_WORKERS, os.cpu_count() or 1)


def decode_edges(indices, v):
    """Inverse of edge_index"""
    low_values = np.arange(v, dtype=np.int64)
    starts = low_values * (2 * v - low_values - 1) // 2
    indices = np.asarray(indices, dtype=np.int64)
    low = np.searchsorted(starts, indices, side="right") - 1
    high = indices - starts[low] + low + 1
    return low, high


def _batches(factors, size):
    iterator = iter(factors)
    while True:
        batch = list(islice(iterator, size))
        if not batch:
            return
        yield batch


def check_factorization(fact, params, workers=None, progress=True):
    """Every factor spanning with its tagged type, and the edge sets partitioning E(K_v)"""
    v = params.v
    counts = np.zeros(v * (v - 1) // 2, dtype=np.uint8)
    structure = []
    kinds = {"short": 0, "long": 0}
    workers = worker_count(workers)
    logger.debug("checking %d factors with %d worker(s)", len(fact), workers)

    bar = tqdm(total=len(fact), desc="factors", disable=(not progress) or progress_disabled())
    with ThreadPoolExecutor(max_workers=workers) as executor:
        for batch in _batches(fact, 4 * workers):
            # edge insertions happen on this thread only
            for kind, problem, edges in executor.map(lambda factor: _examine(factor, params), batch):
                kinds[kind] = kinds.get(kind, 0) + 1
                bar.update(1)
                if problem is not None:
                    structure.append(problem)
                    continue
                current = counts[edges]
                counts[edges] = np.where(current < 255, current + 1, current)
    bar.close()

    if kinds.get("short", 0) != params.r:
        structure.append(f"{kinds.get('short', 0)} factors of type [{params.ell}^{params.M}], expected {params.r}")
    if kinds.get("long", 0) != params.r_prime:
        structure.append(f"{kinds.get('long', 0)} factors of type [{params.M}^{params.ell}], expected {params.r_prime}")

    missing_edges = np.flatnonzero(counts == 0)
    duplicated_edges = np.flatnonzero(counts >= 2)
    if len(missing_edges) > REPORT_LIMIT or len(duplicated_edges) > REPORT_LIMIT:
        logger.warning(
            "%d missing and %d repeated edges, reporting the first %d of each",
            len(missing_edges), len(duplicated_edges), REPORT_LIMIT,
        )

    def as_pairs(indices):
        low, high = decode_edges(indices[:REPORT_LIMIT], v)
        ell = params.ell
        return [((int(u) // ell, int(u) % ell), (int(w) // ell, int(w) % ell)) for u, w in zip(low, high)]

    report = CoverageReport(
        missing=as_pairs(missing_edges),
        duplicated=as_pairs(duplicated_edges),
        structure_failures=structure,
    )
    logger.info("factorization of %s: %s", params, report)
    return report
