"""Exhaustive bipartition scans with entropy-class aggregation.

A scan enumerates every bipartition of a fixed part-A size, computes the
ground-state entanglement entropy of each, and groups the results into
classes of (numerically) equal entropy.  Classes are reported in descending
entropy order with their abundance, a canonical representative (the
lexicographically smallest member), and the range of cut sizes observed.
"""

from __future__ import annotations

import io
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .errors import CapacityError, ValidationError
from .gaussian import (
    CONVENTIONS,
    LITERAL_V,
    Bipartition,
    bipartite_entropy,
    exponent_matrix,
    log_base_label,
)
from .netgraph import potential_matrix

#: Default cap on the number of vertices a scan will accept; override with
#: the OSC_SCAN_LIMIT environment variable or the max_vertices argument.
DEFAULT_SCAN_LIMIT = 24

#: Environment variable overriding the default scan size limit.
SCAN_LIMIT_ENV = "OSC_SCAN_LIMIT"


def scan_limit() -> int:
    """Current vertex limit for scans (environment override if set)."""
    raw = os.environ.get(SCAN_LIMIT_ENV)
    if raw is None:
        return DEFAULT_SCAN_LIMIT
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(
            f"{SCAN_LIMIT_ENV} must be an integer, got {raw!r}"
        ) from exc
    if value < 2:
        raise ValidationError(f"{SCAN_LIMIT_ENV} must be >= 2, got {value}")
    return value


def enumerate_bipartitions(
    num_vertices: int, size_a: int, dedup_complements: bool = False
) -> Iterator[Bipartition]:
    """All bipartitions with |A| = size_a, in lexicographic part-A order.

    With ``dedup_complements`` (meaningful only when 2 * size_a equals the
    vertex count) only one member of each complementary pair is yielded,
    namely the one containing vertex 0.
    """
    if not 1 <= size_a <= num_vertices - 1:
        raise ValidationError(
            f"part-A size must be within 1..{num_vertices - 1}, got {size_a}"
        )
    if dedup_complements and 2 * size_a != num_vertices:
        raise ValidationError(
            "complement deduplication requires an exact half split "
            f"(2 * {size_a} != {num_vertices})"
        )
    if dedup_complements:
        for rest in itertools.combinations(range(1, num_vertices), size_a - 1):
            yield Bipartition(part_a=(0, *rest), total=num_vertices)
    else:
        for part in itertools.combinations(range(num_vertices), size_a):
            yield Bipartition(part_a=part, total=num_vertices)


def cut_size(A: np.ndarray, part: Bipartition) -> int:
    """Number of edges crossing the bipartition."""
    a = list(part.part_a)
    b = list(part.part_b)
    return int(np.asarray(A)[np.ix_(a, b)].sum())


@dataclass(frozen=True)
class ScanConfig:
    """Parameters of a bipartition scan."""

    size_a: int
    dedup_complements: bool = False
    g: float = 1.0
    convention: str = LITERAL_V
    log_base: object = 2
    cluster_tol: float = 1e-8
    include_members: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValidationError(
                f"unknown convention {self.convention!r}; expected one of {CONVENTIONS}"
            )
        if not (isinstance(self.g, (int, float)) and math.isfinite(self.g) and self.g >= 0):
            raise ValidationError(f"coupling g must be a finite number >= 0, got {self.g}")
        if self.cluster_tol <= 0:
            raise ValidationError(f"cluster_tol must be > 0, got {self.cluster_tol}")
        if self.jobs < 1:
            raise ValidationError(f"jobs must be >= 1, got {self.jobs}")


@dataclass(frozen=True)
class ScanClass:
    """One entropy class: equal-entropy bipartitions aggregated."""

    entropy: float
    abundance: int
    agent: tuple[int, ...]
    min_cut: int
    max_cut: int
    members: Optional[tuple[tuple[int, ...], ...]] = None


@dataclass(frozen=True)
class EntropyClassReport:
    """Result of a scan: classes in descending entropy order."""

    graph_size: int
    config: ScanConfig
    total_partitions: int
    classes: tuple[ScanClass, ...]
    min_class_gap: Optional[float]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def class_of(self, part_a: tuple[int, ...]) -> int:
        """Index (0-based, descending entropy) of the class containing the
        given part A.  Requires the scan to have kept members."""
        key = tuple(sorted(part_a))
        for i, cls in enumerate(self.classes):
            if cls.members is not None and key in cls.members:
                return i
        raise ValidationError(
            f"partition {key} not found in any class (members kept: "
            f"{self.classes and self.classes[0].members is not None})"
        )


_WORKER_STATE: dict = {}


def _worker_init(M: np.ndarray, log_base, convention: str, cluster_tol: float):
    _WORKER_STATE["M"] = M
    _WORKER_STATE["log_base"] = log_base
    _WORKER_STATE["convention"] = convention
    _WORKER_STATE["cluster_tol"] = cluster_tol


def _worker_entropy(parts: list[tuple[int, ...]]) -> list[float]:
    M = _WORKER_STATE["M"]
    total = M.shape[0]
    out = []
    for part_a in parts:
        p = Bipartition(part_a=part_a, total=total)
        res = bipartite_entropy(
            M,
            p,
            log_base=_WORKER_STATE["log_base"],
            convention=None,
            cluster_tol=_WORKER_STATE["cluster_tol"],
        )
        out.append(res.total_entropy)
    return out


def scan(
    A: np.ndarray,
    config: ScanConfig,
    max_vertices: Optional[int] = None,
) -> EntropyClassReport:
    """Scan all bipartitions of the given size and aggregate entropy classes.

    ``A`` is a symmetric 0/1 adjacency matrix.  The potential matrix
    I + 2 g L is formed once, converted per the configured convention, and
    every bipartition is evaluated against it.  Classes are formed by
    single-linkage clustering of the sorted entropies with threshold
    cluster_tol * max(1, |s_i|, |s_{i+1}|); each class reports its mean
    entropy, abundance, lexicographically smallest member (``agent``) and
    cut-size range.  Deterministic: identical inputs give identical reports
    regardless of ``jobs``.
    """
    A = np.asarray(A)
    N = A.shape[0]
    limit = scan_limit() if max_vertices is None else max_vertices
    if N > limit:
        raise CapacityError(
            f"scan over {N} vertices exceeds the limit of {limit}; set "
            f"{SCAN_LIMIT_ENV} or max_vertices to allow larger scans"
        )
    V = potential_matrix(A, config.g)
    M = exponent_matrix(V, config.convention)

    parts = [p.part_a for p in enumerate_bipartitions(N, config.size_a, config.dedup_complements)]
    entropies = np.empty(len(parts))
    if config.jobs == 1:
        _worker_init(M, config.log_base, config.convention, config.cluster_tol)
        entropies[:] = _worker_entropy(parts)
    else:
        chunk = max(1, math.ceil(len(parts) / (config.jobs * 8)))
        batches = [parts[i : i + chunk] for i in range(0, len(parts), chunk)]
        with ProcessPoolExecutor(
            max_workers=config.jobs,
            initializer=_worker_init,
            initargs=(M, config.log_base, config.convention, config.cluster_tol),
        ) as pool:
            offset = 0
            for batch, values in zip(batches, pool.map(_worker_entropy, batches)):
                entropies[offset : offset + len(batch)] = values
                offset += len(batch)

    order = np.argsort(entropies, kind="stable")
    groups: list[list[int]] = []
    for rank, idx in enumerate(order):
        if groups:
            prev = entropies[order[rank - 1]]
            cur = entropies[idx]
            tol = config.cluster_tol * max(1.0, abs(prev), abs(cur))
            if cur - prev <= tol:
                groups[-1].append(int(idx))
                continue
        groups.append([int(idx)])

    classes = []
    gaps = []
    means = [float(np.mean(entropies[g])) for g in groups]
    for mean, group in zip(means, groups):
        members = sorted(parts[i] for i in group)
        cuts = [cut_size(A, Bipartition(part_a=parts[i], total=N)) for i in group]
        classes.append(
            ScanClass(
                entropy=mean,
                abundance=len(group),
                agent=members[0],
                min_cut=min(cuts),
                max_cut=max(cuts),
                members=tuple(members) if config.include_members else None,
            )
        )
    for lo, hi in zip(means, means[1:]):
        gaps.append(hi - lo)
    classes.reverse()  # descending entropy
    return EntropyClassReport(
        graph_size=N,
        config=config,
        total_partitions=len(parts),
        classes=tuple(classes),
        min_class_gap=(min(gaps) if gaps else None),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _agent_str(agent: tuple[int, ...]) -> str:
    return ";".join(str(v + 1) for v in agent)


def report_to_json_dict(report: EntropyClassReport) -> dict:
    cfg = report.config
    out = {
        "graph_size": report.graph_size,
        "size_a": cfg.size_a,
        "dedup_complements": cfg.dedup_complements,
        "g": cfg.g,
        "convention": cfg.convention,
        "log_base": log_base_label(cfg.log_base),
        "cluster_tol": cfg.cluster_tol,
        "total_partitions": report.total_partitions,
        "class_count": report.class_count,
        "min_class_gap": report.min_class_gap,
        "classes": [],
    }
    for i, cls in enumerate(report.classes, start=1):
        row = {
            "class_id": i,
            "entropy": cls.entropy,
            "abundance": cls.abundance,
            "agent_1based": [v + 1 for v in cls.agent],
            "min_cut": cls.min_cut,
            "max_cut": cls.max_cut,
        }
        if cls.members is not None:
            row["members_1based"] = [[v + 1 for v in m] for m in cls.members]
        out["classes"].append(row)
    return out


def report_to_json(report: EntropyClassReport) -> str:
    return json.dumps(report_to_json_dict(report), indent=2)


def report_to_csv(report: EntropyClassReport) -> str:
    """CSV rows: class_id, entropy, abundance, agent (semicolon-joined,
    1-based), min_cut, max_cut.  Floats use repr for lossless round-trips."""
    buf = io.StringIO()
    buf.write("class_id,entropy,abundance,agent,min_cut,max_cut\n")
    for i, cls in enumerate(report.classes, start=1):
        buf.write(
            f"{i},{cls.entropy!r},{cls.abundance},{_agent_str(cls.agent)},"
            f"{cls.min_cut},{cls.max_cut}\n"
        )
    return buf.getvalue()


__all__ = [
    "DEFAULT_SCAN_LIMIT",
    "SCAN_LIMIT_ENV",
    "scan_limit",
    "enumerate_bipartitions",
    "cut_size",
    "ScanConfig",
    "ScanClass",
    "EntropyClassReport",
    "scan",
    "report_to_json_dict",
    "report_to_json",
    "report_to_csv",
]
