"""Coefficient-based heating requirement: Q = V * GN * (t_inside - t_outside).

Pure functions over three immutable lookup tables: design outside
temperatures per city, design inside temperatures per structure
destination, and the GN heat-loss coefficient indexed by floor count and
surface/volume ratio. No I/O here except the CSV loaders; loaded tables
are never mutated, so everything is safe to share across threads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    NonPositiveDimension,
    TableFormatError,
    UnknownCity,
    UnknownDestination,
    UnknownLevels,
)

# kW -> Mcal/h. Fixed from the published result pair 11.285 kW / 9.7051 Mcal;
# the physical constant would be 0.859845 Mcal/(h*kW).
KW_TO_MCAL = 0.86

OUTSIDE_TEMP_RANGE = (-50.0, 20.0)
INSIDE_TEMP_RANGE = (0.0, 40.0)


@dataclass(frozen=True)
class CityEntry:
    """One city with its statutory winter design temperature in degC."""

    name: str
    design_outside_temp: float


@dataclass(frozen=True)
class DestinationEntry:
    """One structure destination with its required inside temperature in degC."""

    name: str
    inside_temp: float


@dataclass(frozen=True)
class GnRow:
    """One GN table row: coefficient in W/(m3*K) for a floor count and A/V ratio.

    is_open_upper marks the ">=" row: its gn holds for every ratio at or
    above its av_ratio.
    """

    levels: int
    av_ratio: float
    gn: float
    is_open_upper: bool = False


@dataclass(frozen=True)
class BuildingSpec:
    """User inputs for one sizing run."""

    city: str
    destination: str
    levels: int
    av_ratio: float
    footprint_area: float  # m2
    height: float  # m


@dataclass(frozen=True)
class HeatLoad:
    """Computed heating requirement plus every intermediate value used."""

    q_watts: float
    q_kw: float
    q_mcal: float
    volume: float
    gn_used: float
    gn_clamped: bool
    t_inside: float
    t_outside: float


def _key(name: str) -> str:
    """Lookup key: whitespace-trimmed, case-insensitive, diacritics kept."""
    return name.strip().casefold()


class CityTable:
    """Immutable city -> design outside temperature table."""

    def __init__(self, entries: list[CityEntry]):
        self.entries: tuple[CityEntry, ...] = tuple(entries)
        self._by_key = {_key(e.name): e for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)


class DestinationTable:
    """Immutable destination -> inside temperature table."""

    def __init__(self, entries: list[DestinationEntry]):
        self.entries: tuple[DestinationEntry, ...] = tuple(entries)
        self._by_key = {_key(e.name): e for e in self.entries}

    def __len__(self) -> int:
        return len(self.entries)


class GnTable:
    """Immutable GN coefficient table, grouped by floor count.

    Rows within a group are kept in file order, which the loader has
    validated to be strictly increasing in av_ratio.
    """

    def __init__(self, rows: list[GnRow]):
        self.rows: tuple[GnRow, ...] = tuple(rows)
        groups: dict[int, list[GnRow]] = {}
        for row in self.rows:
            groups.setdefault(row.levels, []).append(row)
        self._groups = {levels: tuple(rows) for levels, rows in groups.items()}

    def __len__(self) -> int:
        return len(self.rows)

    def levels_covered(self) -> tuple[int, ...]:
        return tuple(sorted(self._groups))

    def rows_for(self, levels: int) -> tuple[GnRow, ...]:
        return self._groups.get(levels, ())


@dataclass(frozen=True)
class Tables:
    """The three seed tables, loaded and validated together."""

    cities: CityTable
    destinations: DestinationTable
    gn: GnTable


# ---------------------------------------------------------------------------
# Lookups and the core computation


def lookup_outside_temp(table: CityTable, city: str) -> float:
    """Design outside temperature for a city; raises UnknownCity if absent."""
    entry = table._by_key.get(_key(city))
    if entry is None:
        raise UnknownCity(city, known=tuple(e.name for e in table.entries))
    return entry.design_outside_temp


def lookup_inside_temp(table: DestinationTable, destination: str) -> float:
    """Inside design temperature for a destination; raises UnknownDestination."""
    entry = table._by_key.get(_key(destination))
    if entry is None:
        raise UnknownDestination(destination, known=tuple(e.name for e in table.entries))
    return entry.inside_temp


def lookup_gn(table: GnTable, levels: int, av_ratio: float) -> tuple[float, bool]:
    """GN coefficient for a floor count and surface/volume ratio.

    Returns (gn, clamped). Exact tabulated ratios return the tabulated
    value. Ratios between two rows are linearly interpolated. Ratios at or
    above a ">=" row take that row's gn (not a clamp: the table itself
    states ">="). Ratios outside the tabulated range otherwise clamp to
    the nearest row, flagged clamped=True.
    """
    if av_ratio <= 0:
        raise NonPositiveDimension("av_ratio", av_ratio)
    rows = table.rows_for(levels)
    if not rows:
        raise UnknownLevels(levels, known=table.levels_covered())

    for row in rows:
        if av_ratio == row.av_ratio:
            return row.gn, False

    first, last = rows[0], rows[-1]
    if av_ratio < first.av_ratio:
        return first.gn, True
    if av_ratio > last.av_ratio:
        # Beyond a ">=" row the table value holds by definition; a table
        # without one gives no such licence, so that case is a clamp.
        return last.gn, not last.is_open_upper

    for lo, hi in zip(rows, rows[1:]):
        if lo.av_ratio < av_ratio < hi.av_ratio:
            t = (av_ratio - lo.av_ratio) / (hi.av_ratio - lo.av_ratio)
            return lo.gn + t * (hi.gn - lo.gn), False

    raise AssertionError("unreachable: rows are strictly increasing in av_ratio")


def compute_volume(footprint_area: float, height: float) -> float:
    """Interior volume in m3 from footprint area and height."""
    if footprint_area <= 0:
        raise NonPositiveDimension("footprint_area", footprint_area)
    if height <= 0:
        raise NonPositiveDimension("height", height)
    return float(footprint_area) * float(height)


def heat_load(volume: float, gn: float, t_inside: float, t_outside: float) -> float:
    """Heating requirement in W: volume * gn * (t_inside - t_outside).

    Evaluated literally: a zero or negative temperature difference yields a
    zero or negative requirement, which callers decide how to present.
    """
    if volume <= 0:
        raise NonPositiveDimension("volume", volume)
    if gn <= 0:
        raise NonPositiveDimension("gn", gn)
    return volume * gn * (t_inside - t_outside)


def kw_to_mcal(power_kw: float) -> float:
    """Convert kW to Mcal/h using the fixed 0.86 factor."""
    return power_kw * KW_TO_MCAL


def size_structure(spec: BuildingSpec, tables: Tables) -> HeatLoad:
    """Full sizing pipeline: lookups, volume, requirement, unit conversions.

    The returned HeatLoad keeps every intermediate value (volume, the gn
    used and whether it was clamped, both temperatures) as an audit trail.
    """
    t_outside = lookup_outside_temp(tables.cities, spec.city)
    t_inside = lookup_inside_temp(tables.destinations, spec.destination)
    gn, clamped = lookup_gn(tables.gn, spec.levels, spec.av_ratio)
    volume = compute_volume(spec.footprint_area, spec.height)
    q_watts = heat_load(volume, gn, t_inside, t_outside)
    q_kw = q_watts / 1000
    return HeatLoad(
        q_watts=q_watts,
        q_kw=q_kw,
        q_mcal=kw_to_mcal(q_kw),
        volume=volume,
        gn_used=gn,
        gn_clamped=clamped,
        t_inside=t_inside,
        t_outside=t_outside,
    )


# ---------------------------------------------------------------------------
# Seed table loading

CITIES_FILE = "cities.csv"
DESTINATIONS_FILE = "destinations.csv"
GN_FILE = "gn.csv"


class _RowReader:
    """CSV reader that checks the header and collects per-line violations."""

    def __init__(self, path: Path, header: list[str]):
        self.path = path
        self.header = header
        self.violations: list[tuple[int, str]] = []

    def rows(self):
        try:
            text = self.path.read_text(encoding="utf-8")
        except OSError as exc:
            raise TableFormatError(str(self.path), [(0, f"cannot read file: {exc}")])
        except UnicodeDecodeError as exc:
            raise TableFormatError(str(self.path), [(0, f"not valid UTF-8: {exc}")])
        reader = csv.reader(text.splitlines())
        try:
            header = next(reader)
        except StopIteration:
            raise TableFormatError(str(self.path), [(1, "empty file, expected header")])
        if header != self.header:
            raise TableFormatError(
                str(self.path),
                [(1, f"bad header {header!r}, expected {self.header!r}")],
            )
        for line, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(self.header):
                self.err(line, f"expected {len(self.header)} fields, got {len(row)}")
                continue
            yield line, row

    def err(self, line: int, message: str) -> None:
        self.violations.append((line, message))

    def finish(self) -> None:
        if self.violations:
            raise TableFormatError(str(self.path), self.violations)


def _parse_float(reader: _RowReader, line: int, field: str, text: str) -> float | None:
    try:
        return float(text)
    except ValueError:
        reader.err(line, f"{field}: not a number: {text!r}")
        return None


def load_city_table(path: str | Path) -> CityTable:
    """Load and validate cities.csv (header: name,design_outside_temp_c)."""
    reader = _RowReader(Path(path), ["name", "design_outside_temp_c"])
    entries: list[CityEntry] = []
    seen: dict[str, int] = {}
    lo, hi = OUTSIDE_TEMP_RANGE
    for line, (name, temp_text) in reader.rows():
        name = name.strip()
        if not name:
            reader.err(line, "name: must be non-empty")
            continue
        temp = _parse_float(reader, line, "design_outside_temp_c", temp_text)
        if temp is None:
            continue
        if not lo <= temp <= hi:
            reader.err(line, f"design_outside_temp_c: {temp} outside [{lo}, {hi}]")
            continue
        if _key(name) in seen:
            reader.err(line, f"name: duplicate of line {seen[_key(name)]}: {name!r}")
            continue
        seen[_key(name)] = line
        entries.append(CityEntry(name=name, design_outside_temp=temp))
    reader.finish()
    return CityTable(entries)


def load_destination_table(path: str | Path) -> DestinationTable:
    """Load and validate destinations.csv (header: name,inside_temp_c)."""
    reader = _RowReader(Path(path), ["name", "inside_temp_c"])
    entries: list[DestinationEntry] = []
    seen: dict[str, int] = {}
    lo, hi = INSIDE_TEMP_RANGE
    for line, (name, temp_text) in reader.rows():
        name = name.strip()
        if not name:
            reader.err(line, "name: must be non-empty")
            continue
        temp = _parse_float(reader, line, "inside_temp_c", temp_text)
        if temp is None:
            continue
        if not lo <= temp <= hi:
            reader.err(line, f"inside_temp_c: {temp} outside [{lo}, {hi}]")
            continue
        if _key(name) in seen:
            reader.err(line, f"name: duplicate of line {seen[_key(name)]}: {name!r}")
            continue
        seen[_key(name)] = line
        entries.append(DestinationEntry(name=name, inside_temp=temp))
    reader.finish()
    return DestinationTable(entries)


def load_gn_table(path: str | Path) -> GnTable:
    """Load and validate gn.csv (header: levels,av_ratio,gn,open_upper).

    Per floor-count group (in file order): av_ratio strictly increasing,
    gn non-decreasing, at most one open_upper row and it must be the last
    row of its group.
    """
    reader = _RowReader(Path(path), ["levels", "av_ratio", "gn", "open_upper"])
    rows: list[GnRow] = []
    last_in_group: dict[int, tuple[int, GnRow]] = {}
    open_row_line: dict[int, int] = {}
    for line, (levels_text, ratio_text, gn_text, open_text) in reader.rows():
        try:
            levels = int(levels_text)
        except ValueError:
            reader.err(line, f"levels: not an integer: {levels_text!r}")
            continue
        if levels < 1:
            reader.err(line, f"levels: must be >= 1, got {levels}")
            continue
        ratio = _parse_float(reader, line, "av_ratio", ratio_text)
        gn = _parse_float(reader, line, "gn", gn_text)
        if ratio is None or gn is None:
            continue
        if ratio <= 0:
            reader.err(line, f"av_ratio: must be > 0, got {ratio}")
            continue
        if gn <= 0:
            reader.err(line, f"gn: must be > 0, got {gn}")
            continue
        open_text = open_text.strip().lower()
        if open_text not in ("true", "false"):
            reader.err(line, f"open_upper: must be true or false, got {open_text!r}")
            continue
        row = GnRow(levels=levels, av_ratio=ratio, gn=gn, is_open_upper=open_text == "true")

        if levels in open_row_line:
            if row.is_open_upper:
                reader.err(line, f"open_upper: second open row for levels={levels} "
                                 f"(first at line {open_row_line[levels]})")
            else:
                reader.err(line, f"open_upper row at line {open_row_line[levels]} must be "
                                 f"the last row for levels={levels}")
            continue
        prev = last_in_group.get(levels)
        if prev is not None:
            prev_line, prev_row = prev
            if row.av_ratio <= prev_row.av_ratio:
                reader.err(line, f"av_ratio: must increase within levels={levels} "
                                 f"({row.av_ratio} after {prev_row.av_ratio} at line {prev_line})")
                continue
            if row.gn < prev_row.gn:
                reader.err(line, f"gn: must not decrease within levels={levels} "
                                 f"({row.gn} after {prev_row.gn} at line {prev_line})")
                continue
        if row.is_open_upper:
            open_row_line[levels] = line
        last_in_group[levels] = (line, row)
        rows.append(row)
    reader.finish()
    return GnTable(rows)


def load_tables(data_dir: str | Path) -> Tables:
    """Load all three seed tables from a directory."""
    data_dir = Path(data_dir)
    return Tables(
        cities=load_city_table(data_dir / CITIES_FILE),
        destinations=load_destination_table(data_dir / DESTINATIONS_FILE),
        gn=load_gn_table(data_dir / GN_FILE),
    )
