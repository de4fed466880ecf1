"""Core domain records: staff, publications, journals, funding.

These are plain immutable carriers with validation at construction time.
Text normalization and matching logic live elsewhere; the registry types
here only provide exact-key indexing and headcount queries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import StructuralError, UnknownIdError

RANK_FULL = "FP"
RANK_ASSOCIATE = "AP"
RANK_FELLOW = "RF"
RANKS = (RANK_FULL, RANK_ASSOCIATE, RANK_FELLOW)

DOC_ARTICLE = "article"
DOC_REVIEW = "review"
DOC_OTHER = "other"
DOC_TYPES = (DOC_ARTICLE, DOC_REVIEW, DOC_OTHER)
#: document types that enter any output computation
COUNTED_DOC_TYPES = frozenset({DOC_ARTICLE, DOC_REVIEW})


def _require_nonblank(value: str, what: str) -> str:
    if not isinstance(value, str) or not value.strip():
        raise StructuralError(f"{what} must be a non-blank string, got {value!r}")
    return value.strip()


@dataclass(frozen=True)
class AuthorToken:
    """One author entry on a publication: surname plus ordered initials."""

    surname: str
    initials: tuple[str, ...]

    def __init__(self, surname: str, initials: Iterable[str]):
        surname = _require_nonblank(surname, "author surname")
        parts = tuple(initials)
        if not parts:
            raise StructuralError(
                f"author token {surname!r} carries no initials"
            )
        for p in parts:
            if not isinstance(p, str) or len(p) != 1 or not p.isalpha():
                raise StructuralError(
                    f"author initial must be a single letter, got {p!r}"
                )
        object.__setattr__(self, "surname", surname)
        object.__setattr__(self, "initials", tuple(p.upper() for p in parts))

    def __str__(self) -> str:
        return f"{self.surname},{'.'.join(self.initials)}."


@dataclass(frozen=True)
class StaffMember:
    """A research staff row: one person, one rank, one university and
    disciplinary area, active over an inclusive year range."""

    staff_id: str
    surname: str
    first_names: str
    rank: str
    university_id: str
    area_id: str
    year_from: int
    year_to: int

    def __init__(
        self,
        staff_id: str,
        surname: str,
        first_names: str,
        rank: str,
        university_id: str,
        area_id: str,
        year_from: int,
        year_to: int,
    ):
        object.__setattr__(self, "staff_id", _require_nonblank(staff_id, "staff_id"))
        object.__setattr__(self, "surname", _require_nonblank(surname, "surname"))
        object.__setattr__(
            self, "first_names", _require_nonblank(first_names, "first_names")
        )
        if rank not in RANKS:
            raise StructuralError(
                f"rank must be one of {RANKS}, got {rank!r} for staff {staff_id!r}"
            )
        object.__setattr__(self, "rank", rank)
        object.__setattr__(
            self, "university_id", _require_nonblank(university_id, "university_id")
        )
        object.__setattr__(self, "area_id", _require_nonblank(area_id, "area_id"))
        if not isinstance(year_from, int) or not isinstance(year_to, int):
            raise StructuralError(
                f"active-year bounds must be integers, got {year_from!r}..{year_to!r}"
            )
        if year_from > year_to:
            raise StructuralError(
                f"staff {staff_id!r} has empty active range {year_from}..{year_to}"
            )
        object.__setattr__(self, "year_from", year_from)
        object.__setattr__(self, "year_to", year_to)

    @property
    def initials(self) -> tuple[str, ...]:
        """First letter of each given-name part, in order."""
        parts: list[str] = []
        for chunk in self.first_names.replace("-", " ").split():
            parts.append(chunk[0].upper())
        return tuple(parts)

    def active_in(self, year: int) -> bool:
        """Whether the member is on staff at 31 December of ``year``."""
        return self.year_from <= year <= self.year_to


@dataclass(frozen=True)
class Publication:
    """A bibliographic record.

    ``authors`` is the full ordered author list; its length is the total
    author count c used by fractional counting.  An empty author list is
    representable (it marks a structurally corrupt record that downstream
    processing must report, not a valid publication).
    """

    pub_id: str
    year: int
    doc_type: str
    journal_id: str
    authors: tuple[AuthorToken, ...]
    raw_affiliations: tuple[str, ...]

    def __init__(
        self,
        pub_id: str,
        year: int,
        doc_type: str,
        journal_id: str,
        authors: Iterable[AuthorToken],
        raw_affiliations: Iterable[str],
    ):
        object.__setattr__(self, "pub_id", _require_nonblank(pub_id, "pub_id"))
        if not isinstance(year, int):
            raise StructuralError(f"publication year must be an integer, got {year!r}")
        object.__setattr__(self, "year", year)
        if doc_type not in DOC_TYPES:
            raise StructuralError(
                f"doc_type must be one of {DOC_TYPES}, got {doc_type!r}"
            )
        object.__setattr__(self, "doc_type", doc_type)
        object.__setattr__(
            self, "journal_id", _require_nonblank(journal_id, "journal_id")
        )
        authors = tuple(authors)
        for a in authors:
            if not isinstance(a, AuthorToken):
                raise StructuralError(f"authors must be AuthorToken, got {a!r}")
        object.__setattr__(self, "authors", authors)
        affs = tuple(s.strip() for s in raw_affiliations if s.strip())
        object.__setattr__(self, "raw_affiliations", affs)

    @property
    def author_count(self) -> int:
        return len(self.authors)

    @property
    def counts_as_output(self) -> bool:
        return self.doc_type in COUNTED_DOC_TYPES


class StaffRegistry:
    """Immutable collection of staff rows with exact-key indexes.

    Uniqueness of staff ids is enforced here; surname matching against
    author tokens is out of scope (a matching layer builds its own
    normalized indexes on top of this registry).
    """

    def __init__(self, members: Iterable[StaffMember]):
        members = tuple(members)
        seen: dict[str, StaffMember] = {}
        for m in members:
            if m.staff_id in seen:
                raise StructuralError(f"duplicate staff id {m.staff_id!r}")
            seen[m.staff_id] = m
        self._members = members
        self._by_id = seen
        by_university: dict[str, list[StaffMember]] = {}
        by_cell: dict[tuple[str, str], list[StaffMember]] = {}
        for m in members:
            by_university.setdefault(m.university_id, []).append(m)
            by_cell.setdefault((m.area_id, m.university_id), []).append(m)
        self._by_university = {k: tuple(v) for k, v in by_university.items()}
        self._by_cell = {k: tuple(v) for k, v in by_cell.items()}

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[StaffMember]:
        return iter(self._members)

    @property
    def members(self) -> tuple[StaffMember, ...]:
        return self._members

    def member(self, staff_id: str) -> StaffMember:
        try:
            return self._by_id[staff_id]
        except KeyError:
            raise UnknownIdError(f"unknown staff id {staff_id!r}") from None

    def __contains__(self, staff_id: str) -> bool:
        return staff_id in self._by_id

    def at_university(self, university_id: str) -> tuple[StaffMember, ...]:
        return self._by_university.get(university_id, ())

    def in_cell(self, area_id: str, university_id: str) -> tuple[StaffMember, ...]:
        return self._by_cell.get((area_id, university_id), ())

    def university_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._by_university))

    def area_ids(self) -> tuple[str, ...]:
        return tuple(sorted({m.area_id for m in self._members}))

    def universities_in_area(self, area_id: str) -> tuple[str, ...]:
        return tuple(
            sorted({u for (a, u) in self._by_cell if a == area_id})
        )

    def headcount(
        self, area_id: str, university_id: str, rank: str, year: int
    ) -> int:
        """Members of ``rank`` on staff in the cell at 31 December of ``year``."""
        if rank not in RANKS:
            raise StructuralError(f"rank must be one of {RANKS}, got {rank!r}")
        return sum(
            1
            for m in self.in_cell(area_id, university_id)
            if m.rank == rank and m.active_in(year)
        )

    def coverage(self) -> tuple[int, int] | None:
        """Year span covered by at least one member, or None when empty."""
        if not self._members:
            return None
        return (
            min(m.year_from for m in self._members),
            max(m.year_to for m in self._members),
        )

    def covers(self, year: int) -> bool:
        span = self.coverage()
        return span is not None and span[0] <= year <= span[1]


class JournalTable:
    """Per-journal, per-year impact weights.

    Lookups return None for any (journal, year) pair without a stored
    weight; callers decide whether that is a warning or an error.
    """

    def __init__(self, rows: Iterable[tuple[str, int, float]]):
        weights: dict[tuple[str, int], float] = {}
        ids: set[str] = set()
        for journal_id, year, weight in rows:
            journal_id = _require_nonblank(journal_id, "journal_id")
            if not isinstance(year, int):
                raise StructuralError(
                    f"journal year must be an integer, got {year!r}"
                )
            w = float(weight)
            if not math.isfinite(w) or w < 0:
                raise StructuralError(
                    f"impact weight must be finite and >= 0, got {weight!r} "
                    f"for journal {journal_id!r} year {year}"
                )
            key = (journal_id, year)
            if key in weights:
                raise StructuralError(
                    f"duplicate weight row for journal {journal_id!r} year {year}"
                )
            weights[key] = w
            ids.add(journal_id)
        self._weights = weights
        self._ids = frozenset(ids)

    def __contains__(self, journal_id: str) -> bool:
        return journal_id in self._ids

    def __len__(self) -> int:
        return len(self._weights)

    def weight_for(self, journal_id: str, year: int) -> float | None:
        return self._weights.get((journal_id, year))


class FundingTable:
    """Competitive funding amounts keyed by (university, area, year), in k€.

    Absent rows read as 0: a cell that received no grant in a year simply
    has no row, and zero amounts do occur in recorded data.
    """

    def __init__(self, rows: Iterable[tuple[str, str, int, float]]):
        amounts: dict[tuple[str, str, int], float] = {}
        for university_id, area_id, year, keur in rows:
            university_id = _require_nonblank(university_id, "university_id")
            area_id = _require_nonblank(area_id, "area_id")
            if not isinstance(year, int):
                raise StructuralError(
                    f"funding year must be an integer, got {year!r}"
                )
            v = float(keur)
            if not math.isfinite(v) or v < 0:
                raise StructuralError(
                    f"funding amount must be finite and >= 0, got {keur!r} "
                    f"for ({university_id!r}, {area_id!r}, {year})"
                )
            key = (university_id, area_id, year)
            if key in amounts:
                raise StructuralError(
                    f"duplicate funding row for ({university_id!r}, "
                    f"{area_id!r}, {year})"
                )
            amounts[key] = v
        self._amounts = amounts

    def __len__(self) -> int:
        return len(self._amounts)

    def amount(self, university_id: str, area_id: str, year: int) -> float:
        return self._amounts.get((university_id, area_id, year), 0.0)

    def years_present(self) -> frozenset[int]:
        return frozenset(y for (_, _, y) in self._amounts)
