import json
import math

import pytest

import aerocalc


@pytest.fixture(scope="module")
def engine():
    return aerocalc.Engine()


def test_catalogue_lists_operations_and_bundles(engine):
    cat = engine.catalogue()
    names = {op["name"] for op in cat["operations"]}
    assert {"todr", "ldr", "wb", "carb-icing", "wind-triangle", "hold-entry"} <= names
    assert len(cat["profiles"]) >= 3
    assert set(engine.operations()) == names


def test_tailwind_factor_typed_and_request():
    assert abs(aerocalc.tailwind_factor(5, 55) - 1.182) <= 0.0005
    assert aerocalc.tailwind_factor(5.5, 55) == 1.2
    r = aerocalc.request("tailwind-factor", tailwind=(5, "kt"), reference_speed=(55, "kt"))
    assert r["ok"]
    assert r["result"]["factor"] == {"unit": "ratio", "value": aerocalc.tailwind_factor(5, 55)}


def test_isa_and_altitudes():
    sl = aerocalc.isa(0)
    assert sl["temperature_c"] == 15.0
    assert sl["pressure_hpa"] == 1013.25
    assert abs(sl["density_kgm3"] - 1.225) < 5e-4
    assert abs(aerocalc.isa(36089)["temperature_c"] + 56.5) <= 0.01
    assert abs(aerocalc.density_altitude(5000, aerocalc.isa(5000)["temperature_c"]) - 5000) <= 1
    assert aerocalc.pressure_altitude(0, 1013.25) == pytest.approx(0, abs=1e-6)
    assert aerocalc.tas_from_cas(100, 0, 15) == pytest.approx(100, rel=1e-9)


def test_wind():
    c = aerocalc.wind_components(230, 285, 12)
    assert c["headwind_kt"] == pytest.approx(12 * math.cos(math.radians(55)), abs=1e-9)
    assert c["crosswind_kt"] == pytest.approx(12 * math.sin(math.radians(55)), abs=1e-9)
    assert c["crosswind_side"] == "right"
    calm = aerocalc.wind_triangle(123, 110, 0, 0)
    assert calm == {"wind_correction_angle_deg": 0.0, "true_heading_deg": 123.0, "ground_speed_kt": 110.0}


def test_holding_and_load_factor():
    assert aerocalc.hold_entry(303, 110, "right") == "teardrop"
    assert aerocalc.load_factor(60) == 2.0
    assert aerocalc.convert(390, "m", "ft") == pytest.approx(1279.53, abs=0.01)


def test_todr_factor_chain(engine):
    r = engine.request(
        "todr",
        base_distance=(390, "m"),
        weight_ratio=(1.1, "ratio"),
        elevation=(1500, "ft"),
        oat=(22, "degc"),
        tailwind=(5, "kt"),
        reference_speed=(55, "kt"),
        slope=(2, "percent"),
        surface="dry_grass",
    )
    assert r["ok"], r
    ratio = r["result"]["final_to_base_ratio"]["value"]
    assert abs(ratio - 1220 / 390) <= 0.15 * 1220 / 390
    chain = r["result"]["factor_chain"]
    assert [e["name"] for e in chain["entries"]] == ["weight", "elevation", "temperature", "wind", "slope", "surface"]
    assert chain["general_factor"]["value"] == 1.33
    product = math.prod(e["factor"]["value"] for e in chain["entries"])
    assert chain["environmental_distance"]["value"] == pytest.approx(390 * product, rel=1e-12)


def test_weight_and_balance(engine):
    r = engine.request("wb", profile="c172m", loads={"front_seats": (340, "lb")}, fuel=(30, "usgal"))
    assert r["ok"], r
    assert [p["phase"] for p in r["result"]["phases"]] == ["ramp", "takeoff", "landing", "zero_fuel"]


def test_errors_are_structured(engine):
    r = engine.request("da", pressure_altitude=(5000, "ft"))
    assert not r["ok"]
    assert r["error"]["code"] == "validation_error"
    assert r["error"]["field"] == "oat"
    bad = json.loads(engine.handle_text('{"operation": "nope", "inputs": {}}'))
    assert bad["error"]["code"] == "unknown_operation"
    with pytest.raises(ValueError):
        aerocalc.hold_entry(303, 110, "sideways")


def test_handle_matches_canonical_text(engine):
    req = {"operation": "carb-icing", "inputs": {"oat": {"value": 15, "unit": "degc"},
                                                 "dew_point": {"value": 13, "unit": "degc"}}}
    text = engine.handle_text(json.dumps(req))
    assert text.endswith("\n")
    assert json.loads(text) == engine.handle(req)
    assert json.loads(text)["result"]["category_cruise"] == "serious"
