"""Shared test configuration.

Keeps hypothesis deterministic and patient enough for exact-arithmetic
properties; unit modules stay fast, the acceptance module carries the
heavy horizons.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
