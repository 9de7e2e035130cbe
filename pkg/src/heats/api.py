"""JSON API over the sizing core and the device catalog.

All endpoints live under /v1. Error responses always carry a
machine-readable code and a human message:

    {"error": {"code": "...", "message": "...", "details": [...]}}

Unknown query parameters are rejected with 400 rather than ignored.
"""

from __future__ import annotations

import math
from pathlib import Path

from fastapi import Depends, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import wire
from .catalog import (
    Catalog,
    DEFAULT_HEADROOM,
    DEVICES_FILE,
    FilterCriteria,
    MatchQuery,
    ingest_catalog,
    list_devices,
    match_devices,
)
from .config import resolve_data_dir
from .errors import (
    NonPositiveDimension,
    UnknownCity,
    UnknownDestination,
    UnknownLevels,
)
from .heatcalc import BuildingSpec, Tables, load_tables, size_structure

DEFAULT_PAGE_SIZE = 20

# heatcalc field name -> request field name, for per-field error reporting
_DIMENSION_FIELDS = {
    "footprint_area": "footprint_area_m2",
    "height": "height_m",
    "av_ratio": "av_ratio",
}


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: list[dict] | None = None):
        self.status = status
        self.code = code
        self.message = message
        self.details = details
        super().__init__(message)


def _error_response(status: int, code: str, message: str, details: list[dict] | None = None) -> JSONResponse:
    body: dict = {"error": {"code": code, "message": message}}
    if details:
        body["error"]["details"] = details
    return JSONResponse(status_code=status, content=body)


def _field_error(field: str, code: str, message: str) -> ApiError:
    return ApiError(
        422,
        "validation_error",
        "request failed validation",
        details=[{"field": field, "code": code, "message": message}],
    )


def _bad_param(message: str) -> ApiError:
    return ApiError(400, "invalid_parameter", message)


def _allow_params(*allowed: str):
    """Dependency rejecting any query parameter not in the allowed set."""

    def checker(request: Request) -> None:
        unknown = sorted(set(request.query_params) - set(allowed))
        if unknown:
            raise ApiError(400, "unknown_parameter", f"unknown query parameter(s): {', '.join(unknown)}")

    return Depends(checker)


class SizingRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    city: str
    destination: str
    levels: int
    av_ratio: float = Field(allow_inf_nan=False)
    footprint_area_m2: float = Field(allow_inf_nan=False)
    height_m: float = Field(allow_inf_nan=False)


def _parse_positive_float(text: str, name: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise _bad_param(f"{name} must be a number, got {text!r}")
    if not math.isfinite(value) or value <= 0:
        raise _bad_param(f"{name} must be a positive number, got {text!r}")
    return value


def _parse_positive_int(text: str, name: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise _bad_param(f"{name} must be an integer, got {text!r}")
    if value < 1:
        raise _bad_param(f"{name} must be >= 1, got {text!r}")
    return value


def build_app(tables: Tables, catalog: Catalog) -> FastAPI:
    """Assemble the service around already-loaded tables and catalog."""
    app = FastAPI(docs_url=None, redoc_url=None, openapi_url=None)
    # The browser form is served as static files from any origin.
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET", "POST"], allow_headers=["*"]
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(request: Request, exc: ApiError):
        return _error_response(exc.status, exc.code, exc.message, exc.details)

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        malformed = any(
            err["type"].startswith("json") or tuple(err["loc"]) == ("body",) for err in errors
        )
        if malformed:
            return _error_response(400, "malformed_body", "request body is not a valid JSON document")
        details = [
            {
                "field": ".".join(str(part) for part in err["loc"] if part != "body"),
                "code": err["type"],
                "message": err["msg"],
            }
            for err in errors
        ]
        return _error_response(422, "validation_error", "request failed validation", details)

    @app.get("/v1/cities", dependencies=[_allow_params()])
    def cities():
        entries = sorted(tables.cities.entries, key=lambda e: e.name)
        return [{"name": e.name, "design_outside_temp_c": e.design_outside_temp} for e in entries]

    @app.get("/v1/destinations", dependencies=[_allow_params()])
    def destinations():
        entries = sorted(tables.destinations.entries, key=lambda e: e.name)
        return [{"name": e.name, "inside_temp_c": e.inside_temp} for e in entries]

    @app.get("/v1/gn-options", dependencies=[_allow_params()])
    def gn_options():
        return [
            {"levels": levels, "ratios": [row.av_ratio for row in tables.gn.rows_for(levels)]}
            for levels in tables.gn.levels_covered()
        ]

    @app.post("/v1/sizing", dependencies=[_allow_params()])
    def sizing(request: SizingRequest):
        spec = BuildingSpec(
            city=request.city,
            destination=request.destination,
            levels=request.levels,
            av_ratio=request.av_ratio,
            footprint_area=request.footprint_area_m2,
            height=request.height_m,
        )
        try:
            load = size_structure(spec, tables)
        except UnknownCity as exc:
            known = ", ".join(exc.known)
            raise _field_error("city", "unknown_city", f"unknown city {exc.city!r}; known cities: {known}")
        except UnknownDestination as exc:
            known = ", ".join(exc.known)
            raise _field_error(
                "destination",
                "unknown_destination",
                f"unknown destination {exc.destination!r}; known destinations: {known}",
            )
        except UnknownLevels as exc:
            raise _field_error("levels", "unknown_levels", str(exc))
        except NonPositiveDimension as exc:
            field = _DIMENSION_FIELDS.get(exc.field, exc.field)
            raise _field_error(field, "non_positive_dimension", f"{field} must be > 0")
        return wire.sizing_payload(load)

    @app.get(
        "/v1/devices",
        dependencies=[
            _allow_params("required_kw", "headroom", "combustion", "burner", "fuel", "page", "page_size")
        ],
    )
    def devices(
        required_kw: str | None = None,
        headroom: str | None = None,
        combustion: str | None = None,
        burner: str | None = None,
        fuel: str | None = None,
        page: str | None = None,
        page_size: str | None = None,
    ):
        page_num = _parse_positive_int(page, "page") if page is not None else 1
        size = _parse_positive_int(page_size, "page_size") if page_size is not None else DEFAULT_PAGE_SIZE

        if required_kw is None:
            refinements = {"headroom": headroom, "combustion": combustion, "burner": burner, "fuel": fuel}
            present = sorted(name for name, value in refinements.items() if value is not None)
            if present:
                raise _bad_param(f"{', '.join(present)} require(s) required_kw")
            result = list_devices(catalog, page_num, size)
            return wire.device_page_payload(result, page_num, size, catalog.count)

        required = _parse_positive_float(required_kw, "required_kw")
        headroom_value = DEFAULT_HEADROOM
        if headroom is not None:
            try:
                headroom_value = float(headroom)
            except ValueError:
                raise _bad_param(f"headroom must be a number, got {headroom!r}")
            if not math.isfinite(headroom_value) or headroom_value < 1:
                raise _bad_param(f"headroom must be >= 1, got {headroom!r}")
        try:
            criteria = FilterCriteria(
                combustion=wire.parse_combustion(combustion),
                burner_type=wire.parse_burner(burner),
                fuel=wire.parse_fuel(fuel),
            )
        except ValueError as exc:
            raise _bad_param(str(exc))

        matches = match_devices(
            catalog, MatchQuery(required_power=required, headroom=headroom_value, criteria=criteria)
        )
        start = (page_num - 1) * size
        return wire.device_page_payload(matches[start : start + size], page_num, size, len(matches))

    return app


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    """Load tables and catalog from a data directory and build the service."""
    data_dir = resolve_data_dir(data_dir)
    tables = load_tables(data_dir)
    catalog = ingest_catalog(Path(data_dir) / DEVICES_FILE)
    return build_app(tables, catalog)
