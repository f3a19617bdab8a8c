"""Shared fixtures: configured systems and the exact 1/256 rasters.

Rasters are session-scoped; the five bundled attractors take ~15 s to
grid once and several test modules fold the same arrays.
"""

import time

import pytest

from matradix import attractor
from matradix.systems import PRESETS, get_config

RASTER_NAMES = ("dyadic-03", "twin-dragon", "cloud-three", "cloud-five",
                "cloud-nine")

SESSION_T0 = time.monotonic()


@pytest.fixture(scope="session")
def systems():
    return {name: get_config(name).radix_system() for name in PRESETS}


@pytest.fixture(scope="session")
def configs():
    return {name: get_config(name) for name in PRESETS}


@pytest.fixture(scope="session")
def _raster_bundle():
    rasters, seconds = {}, {}
    for name in RASTER_NAMES:
        system = get_config(name).radix_system()
        t0 = time.perf_counter()
        r = attractor.exact_raster(system, 1 / 256)
        seconds[name] = time.perf_counter() - t0
        assert r is not None, f"exact raster infeasible for {name}"
        rasters[name] = r
    return rasters, seconds


@pytest.fixture(scope="session")
def rasters256(_raster_bundle):
    return _raster_bundle[0]


@pytest.fixture(scope="session")
def raster_times(_raster_bundle):
    return _raster_bundle[1]


@pytest.fixture(scope="session")
def criterion_report(request):
    """One visible PASS/FAIL line per acceptance criterion, written through
    the terminal reporter so output capture cannot swallow it."""
    terminal = request.config.pluginmanager.get_plugin("terminalreporter")

    def report(num: int, ok: bool, detail: str) -> None:
        line = f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}"
        if terminal is not None:
            terminal.write_line("\n" + line)
        else:
            print(line)
        assert ok, line

    return report
