"""Heating-device catalog: ingestion, validation, power matching, facets.

The canonical interchange format is a UTF-8 JSON array of device records
(see DEVICE_FIELDS). A loaded catalog is immutable; re-ingestion builds a
new catalog object, so concurrent readers always observe a complete state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .errors import DuplicateDevice, InvariantViolation, ParseError

DEVICES_FILE = "devices.json"

DEVICE_FIELDS = (
    "producer",
    "model",
    "power_min_kw",
    "power_max_kw",
    "combustion",
    "burner_type",
    "fuels",
    "description",
    "image_ref",
)


class Combustion(str, Enum):
    CONDENSING = "Condensing"
    BURNER = "Burner"


class BurnerType(str, Enum):
    INCLUDED = "Included"
    EXTERNAL = "External"
    UNSPECIFIED = "Unspecified"


class Fuel(str, Enum):
    DIESEL = "Diesel"
    CLU3 = "CLU3"
    NATURAL_GAS = "NaturalGas"
    LPG = "LPG"
    WOOD = "Wood"
    SAWDUST = "Sawdust"


# Fuels offered as filter facets; Wood and Sawdust exist on devices only.
FILTER_FUELS = (Fuel.DIESEL, Fuel.CLU3, Fuel.NATURAL_GAS, Fuel.LPG)

DEFAULT_HEADROOM = 1.5


@dataclass(frozen=True)
class Device:
    """One catalog record. (producer, model) is unique within a catalog."""

    id: str
    producer: str
    model: str
    power_min: float  # kW
    power_max: float  # kW
    combustion: frozenset[Combustion]
    burner_type: BurnerType
    fuels: frozenset[Fuel]
    description: str | None = None
    image_ref: str | None = None


@dataclass(frozen=True)
class FilterCriteria:
    """Facet refinement; None means "any" and imposes no constraint."""

    combustion: Combustion | None = None
    burner_type: BurnerType | None = None
    fuel: Fuel | None = None

    def matches(self, device: Device) -> bool:
        if self.combustion is not None and self.combustion not in device.combustion:
            return False
        if self.burner_type is not None and device.burner_type != self.burner_type:
            return False
        if self.fuel is not None and self.fuel not in device.fuels:
            return False
        return True


@dataclass(frozen=True)
class MatchQuery:
    """Power requirement plus facet criteria for device matching."""

    required_power: float  # kW, > 0
    headroom: float = DEFAULT_HEADROOM  # >= 1, caps oversizing
    criteria: FilterCriteria = field(default_factory=FilterCriteria)

    def __post_init__(self):
        if self.required_power <= 0:
            raise ValueError(f"required_power must be > 0, got {self.required_power!r}")
        if self.headroom < 1:
            raise ValueError(f"headroom must be >= 1, got {self.headroom!r}")


def _device_sort_key(device: Device) -> tuple[str, str]:
    return (device.producer, device.model)


class Catalog:
    """Immutable set of validated devices."""

    def __init__(self, devices: list[Device]):
        self.devices: tuple[Device, ...] = tuple(devices)

    def __len__(self) -> int:
        return len(self.devices)

    @property
    def count(self) -> int:
        return len(self.devices)


def match_devices(catalog: Catalog, query: MatchQuery) -> list[Device]:
    """Devices able to supply the requirement without absurd oversizing.

    Keeps devices with power_max >= required and
    power_min <= headroom * required that match every concrete criterion.
    Ordered ascending by power_max, ties by (producer, model).
    """
    cap = query.headroom * query.required_power
    hits = [
        d
        for d in catalog.devices
        if d.power_max >= query.required_power
        and d.power_min <= cap
        and query.criteria.matches(d)
    ]
    hits.sort(key=lambda d: (d.power_max, _device_sort_key(d)))
    return hits


def list_devices(catalog: Catalog, page: int, page_size: int) -> list[Device]:
    """One page of the catalog ordered by (producer, model); past-the-end is empty."""
    if page < 1:
        raise ValueError(f"page must be >= 1, got {page}")
    if page_size < 1:
        raise ValueError(f"page_size must be >= 1, got {page_size}")
    ordered = sorted(catalog.devices, key=_device_sort_key)
    start = (page - 1) * page_size
    return ordered[start : start + page_size]


# ---------------------------------------------------------------------------
# Ingestion and export


def _device_id(producer: str, model: str) -> str:
    return f"{producer}/{model}"


def _require_str(path: str, locator: str, record: dict, key: str, optional: bool = False) -> str | None:
    value = record.get(key)
    if value is None:
        if optional:
            return None
        raise ParseError(path, locator, f"missing field {key!r}")
    if not isinstance(value, str):
        raise ParseError(path, locator, f"field {key!r} must be a string")
    return value


def _require_number(path: str, locator: str, record: dict, key: str) -> float:
    value = record.get(key)
    if value is None:
        raise ParseError(path, locator, f"missing field {key!r}")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(path, locator, f"field {key!r} must be a number")
    return float(value)


def _parse_enum_list(path: str, locator: str, record: dict, key: str, enum_cls) -> frozenset:
    value = record.get(key)
    if value is None:
        raise ParseError(path, locator, f"missing field {key!r}")
    if not isinstance(value, list):
        raise ParseError(path, locator, f"field {key!r} must be an array")
    members = []
    for item in value:
        try:
            members.append(enum_cls(item))
        except (ValueError, TypeError):
            allowed = ", ".join(m.value for m in enum_cls)
            raise ParseError(path, locator, f"field {key!r}: {item!r} is not one of: {allowed}")
    return frozenset(members)


def _parse_record(path: str, locator: str, record) -> Device:
    if not isinstance(record, dict):
        raise ParseError(path, locator, "record must be a JSON object")
    unknown = set(record) - set(DEVICE_FIELDS)
    if unknown:
        raise ParseError(path, locator, f"unknown field(s): {', '.join(sorted(unknown))}")

    producer = _require_str(path, locator, record, "producer").strip()
    model = _require_str(path, locator, record, "model").strip()
    power_min = _require_number(path, locator, record, "power_min_kw")
    power_max = _require_number(path, locator, record, "power_max_kw")
    combustion = _parse_enum_list(path, locator, record, "combustion", Combustion)
    burner_text = _require_str(path, locator, record, "burner_type")
    try:
        burner_type = BurnerType(burner_text)
    except ValueError:
        allowed = ", ".join(m.value for m in BurnerType)
        raise ParseError(path, locator, f"field 'burner_type': {burner_text!r} is not one of: {allowed}")
    fuels = _parse_enum_list(path, locator, record, "fuels", Fuel)
    description = _require_str(path, locator, record, "description", optional=True)
    image_ref = _require_str(path, locator, record, "image_ref", optional=True)

    if not producer:
        raise InvariantViolation(path, locator, "producer", "must be non-empty")
    if not model:
        raise InvariantViolation(path, locator, "model", "must be non-empty")
    if power_min <= 0:
        raise InvariantViolation(path, locator, "power_min_kw", f"must be > 0, got {power_min}")
    if power_max < power_min:
        raise InvariantViolation(
            path, locator, "power_max_kw", f"must be >= power_min_kw ({power_min}), got {power_max}"
        )
    if not combustion:
        raise InvariantViolation(path, locator, "combustion", "must be non-empty")
    if not fuels:
        raise InvariantViolation(path, locator, "fuels", "must be non-empty")

    return Device(
        id=_device_id(producer, model),
        producer=producer,
        model=model,
        power_min=power_min,
        power_max=power_max,
        combustion=combustion,
        burner_type=burner_type,
        fuels=fuels,
        description=description,
        image_ref=image_ref,
    )


def ingest_catalog(source: str | Path) -> Catalog:
    """Load and validate a device file; returns the catalog handle.

    Raises ParseError / InvariantViolation / DuplicateDevice, each carrying
    the file path and a record locator.
    """
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(str(path), "file", f"cannot read file: {exc}")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(path), f"line {exc.lineno}", f"invalid JSON: {exc.msg}")
    if not isinstance(document, list):
        raise ParseError(str(path), "document", "top level must be a JSON array of records")

    devices: list[Device] = []
    seen: dict[tuple[str, str], int] = {}
    for index, record in enumerate(document, start=1):
        locator = f"record {index}"
        device = _parse_record(str(path), locator, record)
        key = (device.producer, device.model)
        if key in seen:
            raise DuplicateDevice(str(path), locator, device.producer, device.model)
        seen[key] = index
        devices.append(device)
    return Catalog(devices)


def _enum_list(values, enum_cls) -> list[str]:
    # Stable serialization order: enum declaration order.
    return [m.value for m in enum_cls if m in values]


def device_record(device: Device) -> dict:
    """One device as a plain dict in the interchange field order."""
    return {
        "producer": device.producer,
        "model": device.model,
        "power_min_kw": device.power_min,
        "power_max_kw": device.power_max,
        "combustion": _enum_list(device.combustion, Combustion),
        "burner_type": device.burner_type.value,
        "fuels": _enum_list(device.fuels, Fuel),
        "description": device.description,
        "image_ref": device.image_ref,
    }


def export_catalog(catalog: Catalog, destination: str | Path) -> None:
    """Write the catalog back out in the canonical interchange format."""
    records = [device_record(d) for d in sorted(catalog.devices, key=_device_sort_key)]
    Path(destination).write_text(
        json.dumps(records, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
