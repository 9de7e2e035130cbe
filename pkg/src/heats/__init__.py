"""Heating-system sizing: coefficient-based power requirement plus device catalog."""

from .catalog import (
    BurnerType,
    Catalog,
    Combustion,
    Device,
    FilterCriteria,
    Fuel,
    MatchQuery,
    export_catalog,
    ingest_catalog,
    list_devices,
    match_devices,
)
from .heatcalc import (
    BuildingSpec,
    CityEntry,
    DestinationEntry,
    GnRow,
    HeatLoad,
    Tables,
    compute_volume,
    heat_load,
    kw_to_mcal,
    load_tables,
    lookup_gn,
    lookup_inside_temp,
    lookup_outside_temp,
    size_structure,
)

__version__ = "0.1.0"
