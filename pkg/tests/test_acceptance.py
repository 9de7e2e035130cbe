"""Acceptance suite: one test per release criterion, each printing a
pass/fail line. Run with `pytest tests/test_acceptance.py -v -s`.

Expected table values are frozen here, independently of the shipped CSV
files, so a seed-data regression cannot hide behind the loader.
"""

import bisect
import json
import random
from contextlib import contextmanager

from click.testing import CliRunner

from heats.catalog import (
    BurnerType,
    Catalog,
    Combustion,
    Device,
    FILTER_FUELS,
    FilterCriteria,
    Fuel,
    MatchQuery,
    match_devices,
)
from heats.cli import main as cli_main
from heats.heatcalc import (
    BuildingSpec,
    heat_load,
    kw_to_mcal,
    lookup_gn,
    lookup_inside_temp,
    lookup_outside_temp,
    size_structure,
)


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


# Frozen reference data: the published coefficient fragment (14 rows),
# city design temperatures (16) and destination temperatures (10).

GN_ROWS = [
    (1, 0.80, 0.77), (1, 0.85, 0.81), (1, 0.90, 0.85), (1, 0.95, 0.88),
    (1, 1.00, 0.91), (1, 1.05, 0.93), (1, 1.10, 0.95),
    (2, 0.45, 0.57), (2, 0.50, 0.61), (2, 0.55, 0.66), (2, 0.60, 0.70),
    (2, 0.65, 0.72), (2, 0.70, 0.74), (2, 0.75, 0.75),
]

CITY_TEMPS = {
    "Alba Iulia": -18, "Arad": -16, "Beiuș": -18, "Brașov": -21,
    "București": -15, "Cluj Napoca": -18, "Deva": -15, "Hunedoara": -15,
    "Lugoj": -12, "Oradea": -15, "Petroșani": -18, "Reșița": -12,
    "Sibiu": -18, "Timișoara": -15, "Târgu Jiu": -15, "Drobeta Tr Severin": -12,
}

DESTINATION_TEMPS = {
    "Rooms and lobbies": 20, "Vestibules": 16, "Bathrooms": 22, "Kitchens": 16,
    "Toilets": 18, "Stairs": 10, "Entrances": 10, "Laundries and ironings": 15,
    "Drying rooms": 25, "Garages": 10,
}


def test_conversion_golden():
    with criterion("kW->Mcal conversion golden: 11.285 kW -> 9.7051 Mcal"):
        assert format(round(kw_to_mcal(11.285), 4), ".4f") == "9.7051"


def test_table_exactness(tables):
    with criterion("table exactness: 14 GN rows, 16 cities, 10 destinations"):
        assert len(tables.gn) == len(GN_ROWS)
        for levels, ratio, gn in GN_ROWS:
            assert lookup_gn(tables.gn, levels, ratio) == (gn, False)
        assert len(tables.cities) == len(CITY_TEMPS)
        for city, temp in CITY_TEMPS.items():
            assert lookup_outside_temp(tables.cities, city) == temp
        assert len(tables.destinations) == len(DESTINATION_TEMPS)
        for destination, temp in DESTINATION_TEMPS.items():
            assert lookup_inside_temp(tables.destinations, destination) == temp


def _gn_by_level():
    grid = {}
    for levels, ratio, gn in GN_ROWS:
        grid.setdefault(levels, []).append((ratio, gn))
    return grid


def _gn_oracle(rows, ratio):
    ratios = [r for r, _ in rows]
    gns = [g for _, g in rows]
    if ratio <= ratios[0]:
        return gns[0]
    if ratio >= ratios[-1]:
        return gns[-1]
    i = bisect.bisect_right(ratios, ratio)
    return gns[i - 1] + (gns[i] - gns[i - 1]) * (ratio - ratios[i - 1]) / (ratios[i] - ratios[i - 1])


def _random_spec(rng):
    return BuildingSpec(
        city=rng.choice(list(CITY_TEMPS)),
        destination=rng.choice(list(DESTINATION_TEMPS)),
        levels=rng.choice([1, 2]),
        av_ratio=rng.uniform(0.3, 1.6),
        footprint_area=rng.uniform(1, 1000),
        height=rng.uniform(1.5, 8),
    )


def test_equation_oracle_equivalence(tables):
    with criterion("formula oracle equivalence: 10,000 random specs, rel 1e-9"):
        grid = _gn_by_level()
        rng = random.Random(42)
        for _ in range(10_000):
            spec = _random_spec(rng)
            load = size_structure(spec, tables)
            expected = (
                spec.footprint_area
                * spec.height
                * _gn_oracle(grid[spec.levels], spec.av_ratio)
                * (DESTINATION_TEMPS[spec.destination] - CITY_TEMPS[spec.city])
            )
            assert abs(load.q_watts - expected) <= 1e-9 * abs(expected)
            assert load.q_kw == load.q_watts / 1000
            assert load.q_mcal == kw_to_mcal(load.q_kw)


def test_property_suite(tables):
    rng = random.Random(4242)
    cases = 1000

    with criterion("property suite: zero law, monotonicity, linearity, interpolation"):
        for _ in range(cases):
            v = rng.uniform(1, 1e4)
            gn = rng.uniform(0.1, 2)
            t = rng.uniform(-50, 40)
            assert heat_load(v, gn, t, t) == 0.0

        for _ in range(cases):
            v = rng.uniform(1, 1e4)
            gn = rng.uniform(0.1, 2)
            t_out = rng.uniform(-50, 40)
            t_in = rng.uniform(-50, 40)
            step = rng.uniform(1e-6, 50)
            assert heat_load(v, gn, t_in, t_out) < heat_load(v, gn, t_in + step, t_out)

        for _ in range(cases):
            v = rng.uniform(1, 1e4)
            gn = rng.uniform(0.1, 2)
            assert heat_load(v, gn, 20, -15) < heat_load(v + rng.uniform(1e-6, 1e4), gn, 20, -15)
            assert heat_load(v, gn, 20, -15) < heat_load(v, gn + rng.uniform(1e-6, 2), 20, -15)

        for _ in range(cases):
            v = rng.uniform(1, 1e4)
            gn = rng.uniform(0.1, 2)
            t_in = rng.uniform(-50, 40)
            t_out = rng.uniform(-50, 40)
            single = heat_load(v, gn, t_in, t_out)
            double = heat_load(2 * v, gn, t_in, t_out)
            assert abs(double - 2 * single) <= 1e-12 * abs(2 * single)

        brackets = []
        for levels in tables.gn.levels_covered():
            rows = tables.gn.rows_for(levels)
            brackets.extend((levels, lo, hi) for lo, hi in zip(rows, rows[1:]))
        for _ in range(cases):
            levels, lo, hi = rng.choice(brackets)
            t = rng.uniform(1e-9, 1 - 1e-9)
            ratio = lo.av_ratio + t * (hi.av_ratio - lo.av_ratio)
            if not lo.av_ratio < ratio < hi.av_ratio:
                continue
            gn, clamped = lookup_gn(tables.gn, levels, ratio)
            assert clamped is False
            if lo.gn == hi.gn:
                assert gn == lo.gn
            else:
                assert lo.gn < gn < hi.gn

        for _ in range(cases):
            levels, ratio, gn = rng.choice(GN_ROWS)
            assert lookup_gn(tables.gn, levels, ratio) == (gn, False)


def test_device_scenario_golden(catalog):
    with criterion("device pairing golden: 11.285 kW -> Euro-3 trio; GPL -> none"):
        hits = match_devices(catalog, MatchQuery(required_power=11.285, headroom=1.5))
        assert [d.model for d in hits] == ["Euro-3 18", "Euro-3 18/150", "Euro-3 18/200"]
        refined = match_devices(
            catalog,
            MatchQuery(required_power=11.285, headroom=1.5, criteria=FilterCriteria(fuel=Fuel.LPG)),
        )
        assert refined == []


def _random_catalog(rng):
    devices = []
    for index in range(rng.randint(0, 100)):
        power_min = rng.uniform(0.5, 300)
        devices.append(
            Device(
                id=f"dev-{index}",
                producer=f"P{rng.randint(0, 9)}",
                model=f"M{index}",
                power_min=power_min,
                power_max=power_min * rng.uniform(1, 3),
                combustion=frozenset(rng.sample(list(Combustion), rng.randint(1, 2))),
                burner_type=rng.choice(list(BurnerType)),
                fuels=frozenset(rng.sample(list(Fuel), rng.randint(1, len(Fuel)))),
            )
        )
    return Catalog(devices)


def test_filter_anti_monotonicity():
    with criterion("filter anti-monotonicity: refined results are subsets"):
        rng = random.Random(77)
        for _ in range(100):
            catalog = _random_catalog(rng)
            query = MatchQuery(required_power=rng.uniform(0.5, 400), headroom=rng.uniform(1, 3))
            base = {d.id for d in match_devices(catalog, query)}
            refinements = (
                [FilterCriteria(combustion=c) for c in Combustion]
                + [FilterCriteria(burner_type=b) for b in (BurnerType.INCLUDED, BurnerType.EXTERNAL)]
                + [FilterCriteria(fuel=f) for f in FILTER_FUELS]
            )
            for criteria in refinements:
                refined_query = MatchQuery(query.required_power, query.headroom, criteria)
                refined = {d.id for d in match_devices(catalog, refined_query)}
                assert refined <= base


def _canonical(text):
    return json.dumps(json.loads(text), sort_keys=True, separators=(",", ":")).encode()


def test_cli_api_agreement(client):
    with criterion("CLI/API agreement: 100 random specs, byte-identical documents"):
        runner = CliRunner()
        rng = random.Random(512)
        for _ in range(100):
            spec = _random_spec(rng)
            response = client.post(
                "/v1/sizing",
                json={
                    "city": spec.city,
                    "destination": spec.destination,
                    "levels": spec.levels,
                    "av_ratio": spec.av_ratio,
                    "footprint_area_m2": spec.footprint_area,
                    "height_m": spec.height,
                },
            )
            assert response.status_code == 200
            result = runner.invoke(cli_main, [
                "size",
                "--city", spec.city,
                "--destination", spec.destination,
                "--levels", str(spec.levels),
                "--av-ratio", repr(spec.av_ratio),
                "--area", repr(spec.footprint_area),
                "--height", repr(spec.height),
                "--json",
            ])
            assert result.exit_code == 0
            assert _canonical(result.output) == _canonical(response.text)
