"""JSON payload shapes and value parsing shared by the API and the CLI.

Keeping this in one place is what makes `heats size --json` byte-identical
to a POST /v1/sizing response after canonical serialization.
"""

from __future__ import annotations

from .catalog import (
    BurnerType,
    Combustion,
    Device,
    FILTER_FUELS,
    Fuel,
    device_record,
)
from .heatcalc import HeatLoad

# Display precision of the published result pair (4 decimals), applied
# half-even; all other numbers carry at most 6 fractional digits.
RESULT_DECIMALS = 4
NUMBER_DECIMALS = 6

NON_POSITIVE_WARNING = (
    "heating requirement is not positive: the outside design temperature "
    "is at or above the inside design temperature"
)


def sizing_payload(load: HeatLoad) -> dict:
    payload = {
        "q_kw": round(load.q_kw, RESULT_DECIMALS),
        "q_mcal": round(load.q_mcal, RESULT_DECIMALS),
        "q_watts": round(load.q_watts, NUMBER_DECIMALS),
        "gn_used": round(load.gn_used, NUMBER_DECIMALS),
        "gn_clamped": load.gn_clamped,
        "volume_m3": round(load.volume, NUMBER_DECIMALS),
        "t_inside_c": round(load.t_inside, NUMBER_DECIMALS),
        "t_outside_c": round(load.t_outside, NUMBER_DECIMALS),
    }
    if load.t_inside <= load.t_outside:
        payload["warning"] = NON_POSITIVE_WARNING
    return payload


def result_line(payload: dict) -> str:
    """The human result string, shaped like the original application's output."""
    return f"Result: {payload['q_kw']:.4f} kW ({payload['q_mcal']:.4f} MCal)"


def device_payload(device: Device) -> dict:
    return {"id": device.id, **device_record(device)}


def device_page_payload(devices: list[Device], page: int, page_size: int, total: int) -> dict:
    return {
        "devices": [device_payload(d) for d in devices],
        "page": page,
        "page_size": page_size,
        "total": total,
    }


# ---------------------------------------------------------------------------
# Facet value parsing. Canonical enum names are accepted alongside the
# labels the original selection form used (indiferent / motorina / GPL ...),
# case-insensitively.

_ANY_TOKENS = {"any", "indiferent"}

_COMBUSTION_ALIASES: dict[str, Combustion] = {
    "condensing": Combustion.CONDENSING,
    "condensatie": Combustion.CONDENSING,
    "in condensatie": Combustion.CONDENSING,
    "burner": Combustion.BURNER,
    "arzator": Combustion.BURNER,
    "cu arzator": Combustion.BURNER,
}

_BURNER_ALIASES: dict[str, BurnerType] = {
    "included": BurnerType.INCLUDED,
    "inclus": BurnerType.INCLUDED,
    "external": BurnerType.EXTERNAL,
    "exterior": BurnerType.EXTERNAL,
}

_FUEL_ALIASES: dict[str, Fuel] = {
    "diesel": Fuel.DIESEL,
    "motorina": Fuel.DIESEL,
    "clu3": Fuel.CLU3,
    "naturalgas": Fuel.NATURAL_GAS,
    "gaz": Fuel.NATURAL_GAS,
    "gaze naturale": Fuel.NATURAL_GAS,
    "lpg": Fuel.LPG,
    "gpl": Fuel.LPG,
}


def _normalize(text: str) -> str:
    return " ".join(text.split()).casefold()


def _parse_facet(value: str | None, aliases: dict, label: str):
    """None/any-token -> None; alias -> enum member; anything else -> ValueError."""
    if value is None:
        return None
    token = _normalize(value)
    if token in _ANY_TOKENS:
        return None
    member = aliases.get(token)
    if member is None:
        accepted = sorted(set(aliases) | _ANY_TOKENS)
        raise ValueError(f"invalid {label} {value!r}; accepted values: {', '.join(accepted)}")
    return member


def parse_combustion(value: str | None) -> Combustion | None:
    return _parse_facet(value, _COMBUSTION_ALIASES, "combustion type")


def parse_burner(value: str | None) -> BurnerType | None:
    return _parse_facet(value, _BURNER_ALIASES, "burner type")


def parse_fuel(value: str | None) -> Fuel | None:
    fuel = _parse_facet(value, _FUEL_ALIASES, "fuel")
    if fuel is not None and fuel not in FILTER_FUELS:
        raise ValueError(f"fuel {value!r} is not a filterable fuel")
    return fuel
