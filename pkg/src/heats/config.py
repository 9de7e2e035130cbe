"""Data directory and listen address resolution."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

DATA_DIR_ENV = "HEATS_DATA_DIR"
ADDR_ENV = "HEATS_ADDR"
DEFAULT_ADDR = "127.0.0.1:8080"


def default_data_dir() -> Path:
    """The seed data shipped inside the package."""
    return Path(str(resources.files("heats") / "data"))


def resolve_data_dir(explicit: str | Path | None = None) -> Path:
    """Explicit flag value, else HEATS_DATA_DIR, else the packaged seed data."""
    if explicit is not None:
        return Path(explicit)
    env = os.environ.get(DATA_DIR_ENV)
    if env:
        return Path(env)
    return default_data_dir()


def split_addr(addr: str) -> tuple[str, int]:
    """Split a host:port listen address."""
    host, sep, port_text = addr.rpartition(":")
    if not sep or not host:
        raise ValueError(f"address must be host:port, got {addr!r}")
    try:
        port = int(port_text)
    except ValueError:
        raise ValueError(f"port must be an integer, got {port_text!r}")
    if not 0 <= port <= 65535:
        raise ValueError(f"port out of range: {port}")
    return host, port
