import os
import sys
from functools import lru_cache

from hypothesis import HealthCheck, settings

from cohoforge.cohomology import default_resolution
from cohoforge.groups.catalog import census_catalog
from cohoforge.groups.spec import realize

settings.register_profile("ci", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture], max_examples=40)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@lru_cache(maxsize=None)
def group(spec):
    return realize(spec)


@lru_cache(maxsize=None)
def res(spec, p=2, N=4):
    """Shared resolution good through degree N (minimal for p-groups)."""
    return default_resolution(group(spec), p, N)


@lru_cache(maxsize=None)
def catalog():
    return census_catalog()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
