"""Reference tabulations of entropy classes for H(2,3) and H(2,4).

These are previously published groupings of equal-entropy bipartitions that
the scan engine is expected to reproduce.  The checks here compare a freshly
computed :class:`~oscnet.scan.EntropyClassReport` (run with members kept)
against the tabulated data and raise :class:`~oscnet.errors.CheckFailure`
on any substantive mismatch.

Two quirks of the source tabulations are handled explicitly:

* The H(2,3) listing labels vertices by their position in a 3 x 3 grid
  drawing rather than in mixed-radix digit order;
  :data:`H23_LABEL_TO_VERTEX` converts between the two.  The listing also
  contains a handful of typographical defects, recorded in
  :data:`H23_ANOMALIES`: three malformed tuples (repaired in the data
  below), one tuple printed twice inside one group, and two tuples printed
  in two different groups.  Cross-listed tuples are resolved by the scan
  itself: each must land in one of its two printed groups, and the checks
  record which.
* The H(2,4) tabulation names a different maximum-entropy representative
  than the accompanying text; :func:`check_h24_classes` records which of the
  two candidates actually lies in the top class instead of presuming either.
"""

from __future__ import annotations

from collections import Counter

from .errors import CheckFailure, ValidationError
from .scan import EntropyClassReport

# ---------------------------------------------------------------------------
# H(2,3): five entropy classes over the 126 five-vertex subsets
# ---------------------------------------------------------------------------

#: Grid label -> 1-based mixed-radix vertex index for the H(2,3) listing.
#: The listing draws the 3 x 3 rook's graph with rows (1,3,2), (4,7,6),
#: (5,9,8) top to bottom; this package orders vertices by digits, i.e. rows
#: (1,2,3), (4,5,6), (7,8,9).  Mapping grid positions across gives:
H23_LABEL_TO_VERTEX: dict[int, int] = {
    1: 1,
    2: 3,
    3: 2,
    4: 4,
    5: 7,
    6: 6,
    7: 5,
    8: 9,
    9: 8,
}

#: The five tabulated groups (descending entropy), in the listing's own grid
#: labels, with the three malformed tuples repaired.  Duplicates are kept as
#: printed; see H23_ANOMALIES.
H23_SETS_PRINTED: tuple[tuple[tuple[int, ...], ...], ...] = (
    (
        (2, 3, 4, 5, 6), (2, 3, 4, 5, 7), (2, 3, 4, 5, 8), (2, 3, 4, 5, 9),
        (2, 3, 4, 6, 9), (2, 3, 4, 7, 8), (2, 3, 5, 6, 9), (2, 3, 5, 7, 8),
        (2, 4, 5, 6, 9), (2, 4, 5, 7, 8), (3, 4, 5, 6, 9), (3, 4, 5, 7, 8),
        (3, 5, 6, 7, 8), (2, 4, 7, 8, 9), (3, 4, 6, 8, 9), (2, 5, 6, 7, 9),
        (1, 5, 6, 7, 9), (1, 5, 6, 7, 8), (1, 4, 7, 8, 9), (1, 4, 6, 8, 9),
        (1, 3, 6, 7, 8), (1, 3, 6, 8, 9), (1, 2, 7, 8, 9), (1, 2, 6, 7, 9),
        (1, 2, 4, 7, 8), (1, 3, 5, 7, 8), (1, 3, 5, 6, 9), (1, 3, 5, 6, 7),
        (1, 3, 4, 8, 9), (1, 3, 4, 6, 9), (1, 3, 4, 6, 8), (1, 2, 5, 6, 7),
        (1, 2, 5, 6, 9), (1, 2, 5, 7, 9), (1, 2, 4, 7, 9), (1, 2, 4, 8, 9),
    ),
    (
        (2, 3, 4, 8, 9), (2, 3, 5, 6, 7), (2, 4, 5, 7, 9), (3, 4, 5, 6, 8),
        (1, 6, 7, 8, 9), (1, 3, 4, 7, 8), (1, 3, 5, 6, 9), (2, 3, 4, 8, 9),
        (1, 2, 4, 6, 9),
    ),
    (
        (3, 4, 5, 8, 9), (3, 4, 5, 6, 7), (2, 4, 5, 8, 9), (2, 4, 5, 6, 7),
        (2, 3, 5, 6, 8), (2, 3, 5, 7, 9), (2, 3, 4, 7, 9), (2, 3, 4, 6, 8),
        (2, 4, 6, 7, 9), (2, 4, 6, 8, 9), (2, 5, 6, 7, 8), (2, 5, 7, 8, 9),
        (3, 4, 6, 7, 8), (3, 4, 7, 8, 9), (3, 5, 6, 7, 9), (3, 5, 6, 8, 9),
        (1, 5, 7, 8, 9), (1, 5, 6, 8, 9), (1, 4, 6, 7, 9), (1, 4, 6, 7, 8),
        (1, 3, 7, 8, 9), (1, 3, 6, 7, 9), (1, 2, 6, 7, 8), (1, 2, 6, 8, 9),
        (1, 2, 3, 7, 8), (1, 4, 5, 6, 9), (1, 4, 5, 7, 8), (1, 2, 3, 6, 9),
        (1, 3, 4, 5, 6), (1, 3, 4, 5, 8), (1, 2, 4, 5, 7), (1, 2, 4, 5, 9),
        (1, 2, 3, 5, 7), (1, 2, 3, 5, 6), (1, 2, 3, 4, 9), (1, 2, 3, 4, 8),
    ),
    (
        (3, 4, 5, 7, 9), (2, 4, 5, 6, 8), (2, 3, 5, 8, 9), (2, 3, 4, 6, 7),
        (4, 5, 7, 8, 9), (4, 5, 6, 8, 9), (4, 5, 6, 7, 9), (4, 5, 6, 7, 8),
        (2, 3, 7, 8, 9), (2, 3, 6, 8, 9), (2, 3, 6, 7, 9), (2, 3, 6, 7, 8),
        (5, 6, 7, 8, 9), (4, 6, 7, 8, 9), (3, 6, 7, 8, 9), (2, 6, 7, 8, 9),
        (1, 2, 4, 6, 8), (1, 4, 5, 6, 8), (1, 4, 5, 7, 9), (1, 3, 5, 7, 9),
        (1, 3, 5, 8, 9), (1, 3, 4, 7, 9), (1, 3, 4, 6, 7), (1, 2, 5, 6, 8),
        (1, 2, 5, 8, 9), (1, 2, 3, 6, 7), (1, 2, 3, 8, 9), (1, 2, 4, 6, 7),
        (1, 3, 4, 5, 7), (1, 3, 4, 5, 9), (1, 2, 4, 5, 6), (1, 2, 4, 5, 8),
        (1, 2, 3, 5, 8), (1, 2, 3, 5, 9), (1, 2, 3, 4, 7), (1, 2, 3, 4, 6),
    ),
    (
        (2, 4, 6, 7, 8), (2, 5, 6, 8, 9), (3, 4, 6, 7, 9), (3, 4, 7, 8, 9),
        (1, 4, 5, 8, 9), (1, 4, 5, 6, 7), (1, 2, 3, 6, 8), (1, 2, 3, 7, 9),
        (1, 2, 3, 4, 5),
    ),
)

#: Tuples printed in two different groups (1-based group numbers).
H23_CROSS_LISTED: tuple[tuple[tuple[int, ...], tuple[int, int]], ...] = (
    ((1, 3, 5, 6, 9), (1, 2)),
    ((3, 4, 7, 8, 9), (3, 5)),
)

#: Recorded defects of the H(2,3) tabulation, as found.
H23_ANOMALIES: tuple[str, ...] = (
    "three malformed tuples repaired: (2,3,,4,7,8) -> (2,3,4,7,8) in group 1, "
    "(2,,4,5,6,7) -> (2,4,5,6,7) and (2,,5,6,7,8) -> (2,5,6,7,8) in group 3",
    "(2,3,4,8,9) printed twice inside group 2",
    "(1,3,5,6,9) printed in both group 1 and group 2",
    "(3,4,7,8,9) printed in both group 3 and group 5",
    "126 printed tokens cover 123 distinct subsets; 3 of the 126 subsets "
    "are absent",
)


def h23_vertices_from_labels(labels: tuple[int, ...]) -> tuple[int, ...]:
    """Convert a grid-labelled tuple to sorted 0-based vertex indices."""
    try:
        mapped = sorted(H23_LABEL_TO_VERTEX[v] - 1 for v in labels)
    except KeyError as exc:
        raise ValidationError(f"grid label out of range 1..9: {exc}") from exc
    return tuple(mapped)


# ---------------------------------------------------------------------------
# H(2,4): abundance/agent table over the 6435 complement-deduplicated
# eight-vertex subsets
# ---------------------------------------------------------------------------

#: (abundance, agent) rows in descending entropy order, 1-based vertex
#: indices in the tensor order this package also uses.
H24_ROWS: tuple[tuple[int, tuple[int, ...]], ...] = (
    (36, (1, 2, 6, 7, 10, 12, 15, 16)),
    (9, (1, 2, 5, 6, 11, 12, 15, 16)),
    (288, (1, 2, 3, 5, 8, 10, 12, 15)),
    (288, (1, 2, 3, 5, 6, 11, 12, 16)),
    (576, (1, 2, 3, 5, 6, 9, 12, 15)),
    (576, (1, 2, 3, 5, 6, 9, 12, 16)),
    (432, (1, 2, 3, 5, 6, 8, 11, 16)),
    (288, (1, 2, 3, 5, 6, 9, 11, 16)),
    (24, (1, 2, 3, 5, 6, 7, 12, 16)),
    (576, (1, 2, 3, 5, 6, 8, 9, 15)),
    (288, (1, 2, 3, 5, 6, 7, 9, 16)),
    (288, (1, 2, 3, 4, 5, 6, 11, 16)),
    (72, (1, 2, 3, 5, 6, 8, 9, 14)),
    (1152, (1, 2, 3, 4, 5, 6, 9, 15)),
    (288, (1, 2, 3, 4, 5, 6, 11, 15)),
    (72, (1, 2, 3, 4, 5, 6, 11, 12)),
    (288, (1, 2, 3, 4, 5, 6, 9, 14)),
    (288, (1, 2, 3, 4, 5, 6, 9, 11)),
    (96, (1, 2, 3, 4, 5, 6, 7, 12)),
    (360, (1, 2, 3, 4, 5, 6, 7, 9)),
    (144, (1, 2, 3, 4, 5, 6, 9, 13)),
    (6, (1, 2, 3, 4, 5, 6, 7, 8)),
)

#: Maximum-entropy representative named by the tabulation's accompanying
#: text; it differs from the first row's agent above.  The scan decides.
H24_PROSE_MAX_AGENT: tuple[int, ...] = (1, 2, 5, 7, 10, 12, 15, 16)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------


def _require_members(report: EntropyClassReport, what: str):
    if any(cls.members is None for cls in report.classes):
        raise ValidationError(
            f"{what} needs a scan run with include_members=True (--members)"
        )


def _class_lookup(report: EntropyClassReport) -> dict[tuple[int, ...], int]:
    table: dict[tuple[int, ...], int] = {}
    for i, cls in enumerate(report.classes):
        for member in cls.members:
            table[member] = i
    return table


def check_h23_classes(report: EntropyClassReport) -> dict:
    """Verify an H(2,3) size-5 scan against the five tabulated groups.

    Requirements: 126 partitions in 5 classes; every unambiguous tabulated
    tuple of group s lies in class s (1-based, descending entropy); each
    cross-listed tuple lies in one of its two printed groups.  Returns a
    summary dict; raises CheckFailure on violation.
    """
    _require_members(report, "check_h23_classes")
    if report.total_partitions != 126:
        raise CheckFailure(
            f"expected 126 partitions, scan found {report.total_partitions}"
        )
    if report.class_count != 5:
        raise CheckFailure(f"expected 5 entropy classes, scan found {report.class_count}")
    lookup = _class_lookup(report)
    cross = {token: groups for token, groups in H23_CROSS_LISTED}
    resolutions: dict[tuple[int, ...], int] = {}
    for s, group in enumerate(H23_SETS_PRINTED, start=1):
        for token in dict.fromkeys(group):  # dedup, keep order
            part = h23_vertices_from_labels(token)
            if part not in lookup:
                raise CheckFailure(f"tabulated subset {token} missing from scan output")
            cls = lookup[part] + 1
            if token in cross:
                allowed = cross[token]
                if cls not in allowed:
                    raise CheckFailure(
                        f"cross-listed subset {token} landed in class {cls}, "
                        f"outside its printed groups {allowed}"
                    )
                resolutions[token] = cls
            elif cls != s:
                raise CheckFailure(
                    f"subset {token} of group {s} landed in class {cls}"
                )
    abundances = [cls.abundance for cls in report.classes]
    return {
        "classes": report.class_count,
        "total_partitions": report.total_partitions,
        "abundances": abundances,
        "cross_listed_resolutions": {
            ",".join(map(str, token)): cls for token, cls in resolutions.items()
        },
        "anomalies": list(H23_ANOMALIES),
    }


def check_h24_classes(report: EntropyClassReport) -> dict:
    """Verify an H(2,4) half/half deduplicated scan against the 22-row table.

    Requirements: 6435 partitions in 22 classes; abundance multiset equal to
    the tabulated column; minimum class of abundance 6 containing vertices
    1..8.  The top-class representative conflict between the tabulated agent
    and the textual candidate is recorded, not judged.  Returns a summary
    dict; raises CheckFailure on violation.
    """
    _require_members(report, "check_h24_classes")
    if report.total_partitions != 6435:
        raise CheckFailure(
            f"expected 6435 partitions, scan found {report.total_partitions}"
        )
    if report.class_count != 22:
        raise CheckFailure(f"expected 22 entropy classes, scan found {report.class_count}")
    expected = Counter(abundance for abundance, _ in H24_ROWS)
    actual = Counter(cls.abundance for cls in report.classes)
    if expected != actual:
        raise CheckFailure(
            f"abundance multiset mismatch: expected {sorted(expected.elements())}, "
            f"got {sorted(actual.elements())}"
        )
    bottom = report.classes[-1]
    if bottom.abundance != 6:
        raise CheckFailure(
            f"minimum class abundance is {bottom.abundance}, expected 6"
        )
    first_eight = tuple(range(8))
    if first_eight not in bottom.members:
        raise CheckFailure("minimum class does not contain vertices 1..8")
    top_members = set(report.classes[0].members)
    table_agent = tuple(v - 1 for v in H24_ROWS[0][1])
    prose_agent = tuple(v - 1 for v in H24_PROSE_MAX_AGENT)
    in_top_table = table_agent in top_members
    in_top_prose = prose_agent in top_members
    if not (in_top_table or in_top_prose):
        raise CheckFailure(
            "neither recorded maximum-entropy representative lies in the top class"
        )
    abundance_order_matches = [cls.abundance for cls in report.classes] == [
        abundance for abundance, _ in H24_ROWS
    ]
    agent_rank_matches = sum(
        1
        for cls, (_, agent) in zip(report.classes, H24_ROWS)
        if tuple(v - 1 for v in agent) in set(cls.members)
    )
    return {
        "classes": report.class_count,
        "total_partitions": report.total_partitions,
        "abundance_multiset_matches": True,
        "abundance_order_matches": abundance_order_matches,
        "agent_rank_matches": agent_rank_matches,
        "top_class_contains_table_agent": in_top_table,
        "top_class_contains_text_agent": in_top_prose,
        "min_class_contains_first_eight": True,
    }


__all__ = [
    "H23_LABEL_TO_VERTEX",
    "H23_SETS_PRINTED",
    "H23_CROSS_LISTED",
    "H23_ANOMALIES",
    "h23_vertices_from_labels",
    "H24_ROWS",
    "H24_PROSE_MAX_AGENT",
    "check_h23_classes",
    "check_h24_classes",
]
