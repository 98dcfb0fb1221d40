"""Offline flight computer calculations.

    >>> import aerocalc
    >>> r = aerocalc.request("tailwind-factor", tailwind=(5, "kt"), reference_speed=(55, "kt"))
    >>> round(r["result"]["factor"]["value"], 3)
    1.182
"""
import json
import os
from pathlib import Path

try:
    from . import _aerocalc as _native
except ImportError:  # in-tree build: the extension sits next to the build outputs
    import _aerocalc as _native

convert = _native.convert
isa = _native.isa
pressure_altitude = _native.pressure_altitude
density_altitude = _native.density_altitude
tas_from_cas = _native.tas_from_cas
wind_components = _native.wind_components
wind_triangle = _native.wind_triangle
hold_entry = _native.hold_entry
tailwind_factor = _native.tailwind_factor
load_factor = _native.load_factor

_PACKAGE_DATA = Path(__file__).with_name("data")


def _default_data_dir():
    if os.environ.get("AEROCALC_DATA_DIR"):
        return os.environ["AEROCALC_DATA_DIR"]
    if _PACKAGE_DATA.is_dir():
        return str(_PACKAGE_DATA)
    return None


class Engine:
    """Request/response engine over a data directory of bundles."""

    def __init__(self, data_dir=None):
        self._engine = _native.Engine(data_dir or _default_data_dir())

    def handle(self, request):
        """Takes a request dict, returns the response dict."""
        return json.loads(self._engine.handle(json.dumps(request)))

    def handle_text(self, text):
        return self._engine.handle(text)

    def catalogue(self):
        return json.loads(self._engine.catalogue())

    def operations(self):
        return list(self._engine.operations())

    def request(self, operation, units=None, **inputs):
        """Keyword inputs; (value, unit) tuples become quantities."""
        body = {"operation": operation, "inputs": {k: _quantity(v) for k, v in inputs.items()}}
        if units:
            body["units"] = units
        return self.handle(body)


def _quantity(v):
    if isinstance(v, tuple) and len(v) == 2:
        return {"value": v[0], "unit": v[1]}
    if isinstance(v, dict):
        return {k: _quantity(x) for k, x in v.items()}
    return v


_default = None


def request(operation, units=None, **inputs):
    global _default
    if _default is None:
        _default = Engine()
    return _default.request(operation, units=units, **inputs)


__all__ = [
    "Engine",
    "request",
    "convert",
    "isa",
    "pressure_altitude",
    "density_altitude",
    "tas_from_cas",
    "wind_components",
    "wind_triangle",
    "hold_entry",
    "tailwind_factor",
    "load_factor",
]
