"""Command-line front door: sizing, catalog queries, data validation, serving.

Exit codes: 0 success, 1 environment/data failure, 2 usage or input
validation failure.
"""

from __future__ import annotations

import json
import socket
import sys

import click
import uvicorn

from . import wire
from .api import create_app
from .catalog import (
    DEFAULT_HEADROOM,
    DEVICES_FILE,
    FilterCriteria,
    MatchQuery,
    ingest_catalog,
    match_devices,
)
from .config import ADDR_ENV, DATA_DIR_ENV, DEFAULT_ADDR, resolve_data_dir, split_addr
from .errors import (
    DuplicateDevice,
    HeatsError,
    InvariantViolation,
    NonPositiveDimension,
    ParseError,
    TableFormatError,
    UnknownCity,
    UnknownDestination,
    UnknownLevels,
)
from .heatcalc import (
    BuildingSpec,
    CITIES_FILE,
    DESTINATIONS_FILE,
    GN_FILE,
    load_city_table,
    load_destination_table,
    load_gn_table,
    load_tables,
    size_structure,
)

_VALIDATION_ERRORS = (UnknownCity, UnknownDestination, UnknownLevels, NonPositiveDimension)


@click.group()
def main():
    """Size a structure's heating power and pick matching devices."""


@main.command("size")
@click.option("--city", required=True, help="City, as listed in the city table.")
@click.option("--destination", required=True, help="Structure destination, as listed.")
@click.option("--levels", required=True, type=int, help="Number of floors.")
@click.option("--av-ratio", required=True, type=float, help="Surface/volume ratio, m2/m3.")
@click.option("--area", required=True, type=float, help="Footprint area, m2.")
@click.option("--height", required=True, type=float, help="Height, m.")
@click.option("--json", "as_json", is_flag=True, help="Emit the sizing response document.")
def cmd_size(city, destination, levels, av_ratio, area, height, as_json):
    """Compute the required heating power."""
    try:
        tables = load_tables(resolve_data_dir())
    except TableFormatError as exc:
        raise click.ClickException(str(exc))
    spec = BuildingSpec(
        city=city,
        destination=destination,
        levels=levels,
        av_ratio=av_ratio,
        footprint_area=area,
        height=height,
    )
    try:
        load = size_structure(spec, tables)
    except _VALIDATION_ERRORS as exc:
        raise click.UsageError(str(exc))
    payload = wire.sizing_payload(load)
    if as_json:
        click.echo(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        click.echo(wire.result_line(payload))
        if "warning" in payload:
            click.echo(f"Warning: {payload['warning']}")


@main.command("devices")
@click.option("--required-kw", required=True, type=float, help="Computed power requirement, kW.")
@click.option("--headroom", type=float, default=DEFAULT_HEADROOM, show_default=True,
              help="Oversizing cap: device minimum power <= headroom * requirement.")
@click.option("--combustion", default=None, help="Combustion type facet (or 'any').")
@click.option("--burner", default=None, help="Burner type facet (or 'any').")
@click.option("--fuel", default=None, help="Fuel facet (or 'any').")
@click.option("--json", "as_json", is_flag=True, help="Emit matching devices as JSON.")
def cmd_devices(required_kw, headroom, combustion, burner, fuel, as_json):
    """List catalog devices able to supply a power requirement."""
    if required_kw <= 0:
        raise click.UsageError(f"--required-kw must be > 0, got {required_kw}")
    if headroom < 1:
        raise click.UsageError(f"--headroom must be >= 1, got {headroom}")
    try:
        criteria = FilterCriteria(
            combustion=wire.parse_combustion(combustion),
            burner_type=wire.parse_burner(burner),
            fuel=wire.parse_fuel(fuel),
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        catalog = ingest_catalog(resolve_data_dir() / DEVICES_FILE)
    except HeatsError as exc:
        raise click.ClickException(str(exc))

    query = MatchQuery(required_power=required_kw, headroom=headroom, criteria=criteria)
    hits = match_devices(catalog, query)
    if as_json:
        click.echo(json.dumps([wire.device_payload(d) for d in hits], ensure_ascii=False, indent=2))
        return
    if not hits:
        click.echo("no matching devices")
        return
    rows = [["PRODUCER", "MODEL", "POWER [kW]", "COMBUSTION", "BURNER", "FUELS"]]
    for d in hits:
        record = wire.device_payload(d)
        rows.append([
            d.producer,
            d.model,
            f"{d.power_min:.2f}-{d.power_max:.2f}",
            ",".join(record["combustion"]),
            record["burner_type"],
            ",".join(record["fuels"]),
        ])
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    for row in rows:
        click.echo("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())


@main.command("validate")
@click.option("--data-dir", envvar=DATA_DIR_ENV, default=None,
              help="Directory holding the seed tables and the device file.")
def cmd_validate(data_dir):
    """Check all seed data files and report every violation."""
    directory = resolve_data_dir(data_dir)
    if not directory.is_dir():
        raise click.ClickException(f"not a directory: {directory}")
    checks = [
        (CITIES_FILE, load_city_table),
        (DESTINATIONS_FILE, load_destination_table),
        (GN_FILE, load_gn_table),
        (DEVICES_FILE, ingest_catalog),
    ]
    failed = 0
    for filename, loader in checks:
        try:
            loader(directory / filename)
        except TableFormatError as exc:
            failed += 1
            for line, message in exc.violations:
                place = f"line {line}: " if line else ""
                click.echo(f"{filename}: {place}{message}")
        except (ParseError, InvariantViolation, DuplicateDevice) as exc:
            failed += 1
            click.echo(f"{filename}: {exc}")
        else:
            click.echo(f"{filename}: OK")
    if failed:
        click.echo(f"{failed} of {len(checks)} files invalid")
        sys.exit(1)
    click.echo(f"{len(checks)} files OK")


@main.command("serve")
@click.option("--addr", envvar=ADDR_ENV, default=DEFAULT_ADDR, show_default=True,
              help="host:port listen address; port 0 picks an ephemeral port.")
@click.option("--data-dir", envvar=DATA_DIR_ENV, default=None,
              help="Directory holding the seed tables and the device file.")
def cmd_serve(addr, data_dir):
    """Serve the JSON API."""
    try:
        host, port = split_addr(addr)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    try:
        app = create_app(resolve_data_dir(data_dir))
    except HeatsError as exc:
        raise click.ClickException(str(exc))
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((host, port))
        sock.listen(128)
    except OSError as exc:
        sock.close()
        raise click.ClickException(f"cannot bind {addr}: {exc}")
    bound_host, bound_port = sock.getsockname()[:2]
    click.echo(f"Listening on http://{bound_host}:{bound_port}")
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])


if __name__ == "__main__":
    main()
