"""CSV ingestion with per-line diagnostics.

All five input files are UTF-8 CSV with a header row.  Malformed rows
are collected (not raised one at a time) so a single run reports every
problem; referential gaps that the pipeline can survive become warnings
instead.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .config import RunConfig
from .disambiguation import AffiliationDictionary, normalize_text
from .errors import IngestError, StructuralError
from .records import (
    AuthorToken,
    DOC_TYPES,
    FundingTable,
    JournalTable,
    Publication,
    RANKS,
    StaffMember,
    StaffRegistry,
)

STAFF_FIELDS = ("staff_id", "surname", "first_names", "rank",
                "university_id", "area_id", "year_from", "year_to")
PUBLICATION_FIELDS = ("pub_id", "year", "doc_type", "journal_id",
                      "authors", "raw_affiliations")
JOURNAL_FIELDS = ("journal_id", "year", "impact_weight")
FUNDING_FIELDS = ("university_id", "area_id", "year", "prin_keur")
AFFILIATION_FIELDS = ("raw_pattern", "university_id")
OVERRIDE_FIELDS = ("pub_id", "author_position", "staff_id")


@dataclass(frozen=True)
class Corpus:
    """The validated in-memory form of the five input files."""

    staff: StaffRegistry
    publications: tuple[Publication, ...]
    journals: JournalTable
    funding: FundingTable
    affiliations: AffiliationDictionary
    warnings: tuple[str, ...]


def _read_rows(path: Path, fields: tuple[str, ...], diagnostics: list[str]):
    """Parse one CSV file into (line_number, row_dict) pairs.

    Header mismatches and short/long rows are fatal diagnostics; the
    file is then skipped entirely.
    """
    name = path.name
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        diagnostics.append(f"{name}: cannot open: {exc}")
        return []
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            diagnostics.append(f"{name}: empty file, expected header "
                               f"{','.join(fields)}")
            return []
        except csv.Error as exc:
            diagnostics.append(f"{name}: unreadable CSV: {exc}")
            return []
        if tuple(h.strip() for h in header) != fields:
            diagnostics.append(
                f"{name}:1: header must be {','.join(fields)}, "
                f"got {','.join(header)}"
            )
            return []
        rows = []
        try:
            for raw in reader:
                line = reader.line_num
                if not raw or all(not cell.strip() for cell in raw):
                    continue
                if len(raw) != len(fields):
                    diagnostics.append(
                        f"{name}:{line}: expected {len(fields)} fields, "
                        f"got {len(raw)}"
                    )
                    continue
                rows.append((line, dict(zip(fields, raw))))
        except csv.Error as exc:
            diagnostics.append(f"{name}: unreadable CSV: {exc}")
            return []
        return rows


def _parse_int(value: str, what: str, name: str, line: int,
               diagnostics: list[str]):
    try:
        return int(value.strip())
    except ValueError:
        diagnostics.append(f"{name}:{line}: {what} must be an integer, "
                           f"got {value!r}")
        return None


def _parse_float(value: str, what: str, name: str, line: int,
                 diagnostics: list[str]):
    try:
        return float(value.strip())
    except ValueError:
        diagnostics.append(f"{name}:{line}: {what} must be a number, "
                           f"got {value!r}")
        return None


def _load_staff(path: Path, diagnostics: list[str]) -> StaffRegistry:
    members = []
    seen: dict[str, int] = {}
    name = path.name
    for line, row in _read_rows(path, STAFF_FIELDS, diagnostics):
        staff_id = row["staff_id"].strip()
        if staff_id in seen:
            diagnostics.append(
                f"{name}:{line}: duplicate staff id {staff_id!r} "
                f"(first defined at line {seen[staff_id]})"
            )
            continue
        year_from = _parse_int(row["year_from"], "year_from", name, line,
                               diagnostics)
        year_to = _parse_int(row["year_to"], "year_to", name, line,
                             diagnostics)
        if year_from is None or year_to is None:
            continue
        rank = row["rank"].strip()
        if rank not in RANKS:
            diagnostics.append(
                f"{name}:{line}: rank must be one of {'/'.join(RANKS)}, "
                f"got {rank!r}"
            )
            continue
        try:
            member = StaffMember(
                staff_id, row["surname"], row["first_names"], rank,
                row["university_id"], row["area_id"], year_from, year_to,
            )
        except StructuralError as exc:
            diagnostics.append(f"{name}:{line}: {exc}")
            continue
        seen[staff_id] = line
        members.append(member)
    return StaffRegistry(members)


def parse_author_field(field: str) -> tuple[AuthorToken, ...]:
    """Split a semicolon-joined author list into tokens.

    Each author is SURNAME,INITIALS where the initials part holds the
    initial letters, optionally dotted ("M.A." and "MA" both mean two
    initials).  An empty field means an author-less record.
    """
    field = field.strip()
    if not field:
        return ()
    tokens = []
    for piece in field.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        if "," not in piece:
            raise StructuralError(
                f"author entry {piece!r} lacks the SURNAME,INITIALS comma"
            )
        surname, _, initials_part = piece.partition(",")
        initials = tuple(ch for ch in initials_part if ch.isalpha())
        tokens.append(AuthorToken(surname, initials))
    return tuple(tokens)


def _load_publications(
    path: Path, diagnostics: list[str]
) -> tuple[Publication, ...]:
    pubs = []
    seen: dict[str, int] = {}
    name = path.name
    for line, row in _read_rows(path, PUBLICATION_FIELDS, diagnostics):
        pub_id = row["pub_id"].strip()
        if pub_id in seen:
            diagnostics.append(
                f"{name}:{line}: duplicate publication id {pub_id!r} "
                f"(first defined at line {seen[pub_id]})"
            )
            continue
        year = _parse_int(row["year"], "year", name, line, diagnostics)
        if year is None:
            continue
        doc_type = row["doc_type"].strip()
        if doc_type not in DOC_TYPES:
            diagnostics.append(
                f"{name}:{line}: doc_type must be one of "
                f"{'/'.join(DOC_TYPES)}, got {doc_type!r}"
            )
            continue
        try:
            authors = parse_author_field(row["authors"])
            pub = Publication(
                pub_id, year, doc_type, row["journal_id"], authors,
                tuple(row["raw_affiliations"].split(";")),
            )
        except StructuralError as exc:
            diagnostics.append(f"{name}:{line}: {exc}")
            continue
        seen[pub_id] = line
        pubs.append(pub)
    return tuple(pubs)


def _load_journals(path: Path, diagnostics: list[str]) -> JournalTable:
    rows = []
    seen: dict[tuple[str, int], int] = {}
    name = path.name
    for line, row in _read_rows(path, JOURNAL_FIELDS, diagnostics):
        journal_id = row["journal_id"].strip()
        year = _parse_int(row["year"], "year", name, line, diagnostics)
        weight = _parse_float(row["impact_weight"], "impact_weight", name,
                              line, diagnostics)
        if year is None or weight is None:
            continue
        key = (journal_id, year)
        if key in seen:
            diagnostics.append(
                f"{name}:{line}: duplicate weight for journal "
                f"{journal_id!r} year {year} (first at line {seen[key]})"
            )
            continue
        if weight < 0:
            diagnostics.append(
                f"{name}:{line}: impact_weight must be >= 0, got {weight}"
            )
            continue
        if not journal_id:
            diagnostics.append(f"{name}:{line}: journal_id is blank")
            continue
        seen[key] = line
        rows.append((journal_id, year, weight))
    return JournalTable(rows)


def _load_funding(
    path: Path,
    known_universities: frozenset[str],
    diagnostics: list[str],
    warnings: list[str],
) -> FundingTable:
    rows = []
    seen: dict[tuple[str, str, int], int] = {}
    name = path.name
    for line, row in _read_rows(path, FUNDING_FIELDS, diagnostics):
        university_id = row["university_id"].strip()
        area_id = row["area_id"].strip()
        year = _parse_int(row["year"], "year", name, line, diagnostics)
        keur = _parse_float(row["prin_keur"], "prin_keur", name, line,
                            diagnostics)
        if year is None or keur is None:
            continue
        if keur < 0:
            diagnostics.append(
                f"{name}:{line}: prin_keur must be >= 0, got {keur}"
            )
            continue
        if not university_id or not area_id:
            diagnostics.append(f"{name}:{line}: blank university or area id")
            continue
        if university_id not in known_universities:
            warnings.append(
                f"{name}:{line}: unknown university {university_id!r}; "
                "row skipped"
            )
            continue
        key = (university_id, area_id, year)
        if key in seen:
            diagnostics.append(
                f"{name}:{line}: duplicate funding row for {key!r} "
                f"(first at line {seen[key]})"
            )
            continue
        seen[key] = line
        rows.append((university_id, area_id, year, keur))
    return FundingTable(rows)


def _load_affiliations(
    path: Path, diagnostics: list[str]
) -> AffiliationDictionary:
    rows = []
    seen: dict[str, tuple[int, str]] = {}
    name = path.name
    for line, row in _read_rows(path, AFFILIATION_FIELDS, diagnostics):
        pattern = row["raw_pattern"]
        university_id = row["university_id"].strip()
        key = normalize_text(pattern)
        if not key:
            diagnostics.append(
                f"{name}:{line}: pattern {pattern!r} is empty after "
                "normalization"
            )
            continue
        if not university_id:
            diagnostics.append(f"{name}:{line}: university_id is blank")
            continue
        if key in seen:
            prev_line, prev_uni = seen[key]
            if prev_uni != university_id:
                diagnostics.append(
                    f"{name}:{line}: pattern {pattern!r} conflicts with "
                    f"line {prev_line} (maps to both {prev_uni!r} and "
                    f"{university_id!r})"
                )
            continue
        seen[key] = (line, university_id)
        rows.append((pattern, university_id))
    return AffiliationDictionary(rows)


def load_overrides(path: Path) -> dict[tuple[str, int], str | None]:
    """Parse a manual-review decision file.

    Columns: pub_id, author_position (1-based), staff_id.  A blank
    staff_id records the decision that the author is not on staff.
    """
    diagnostics: list[str] = []
    overrides: dict[tuple[str, int], str | None] = {}
    name = Path(path).name
    for line, row in _read_rows(Path(path), OVERRIDE_FIELDS, diagnostics):
        position = _parse_int(row["author_position"], "author_position",
                              name, line, diagnostics)
        if position is None:
            continue
        pub_id = row["pub_id"].strip()
        if not pub_id or position < 1:
            diagnostics.append(
                f"{name}:{line}: pub_id must be non-blank and position >= 1"
            )
            continue
        key = (pub_id, position)
        if key in overrides:
            diagnostics.append(
                f"{name}:{line}: duplicate override for {key!r}"
            )
            continue
        staff_id = row["staff_id"].strip()
        overrides[key] = staff_id or None
    if diagnostics:
        raise IngestError(
            f"{len(diagnostics)} problem(s) in the override file", diagnostics
        )
    return overrides


def ingest(config: RunConfig) -> Corpus:
    """Load and validate the five input files named by the config.

    Raises IngestError with the full list of line diagnostics when any
    file has structural problems; survivable referential gaps are
    returned as warnings on the corpus.
    """
    for attr in ("staff_path", "publications_path", "journals_path",
                 "funding_path", "affiliations_path"):
        if getattr(config, attr) is None:
            raise IngestError(f"config is missing {attr}")
    diagnostics: list[str] = []
    warnings: list[str] = []

    staff = _load_staff(Path(config.staff_path), diagnostics)
    publications = _load_publications(Path(config.publications_path),
                                      diagnostics)
    journals = _load_journals(Path(config.journals_path), diagnostics)
    funding = _load_funding(
        Path(config.funding_path),
        frozenset(staff.university_ids()),
        diagnostics,
        warnings,
    )
    affiliations = _load_affiliations(Path(config.affiliations_path),
                                      diagnostics)

    if diagnostics:
        raise IngestError(
            f"{len(diagnostics)} problem(s) in input files", diagnostics
        )

    unknown_journals = sorted(
        {p.journal_id for p in publications if p.journal_id not in journals}
    )
    for journal_id in unknown_journals:
        warnings.append(
            f"journal {journal_id!r} appears in publications but not in "
            "the journal table"
        )

    return Corpus(
        staff=staff,
        publications=publications,
        journals=journals,
        funding=funding,
        affiliations=affiliations,
        warnings=tuple(warnings),
    )
