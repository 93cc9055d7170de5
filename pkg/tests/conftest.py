from __future__ import annotations

import pytest

from tl2b.scalars import derive_params, make_param_point

SEEDS = (1, 2, 3)


@pytest.fixture(scope="session")
def point():
    return make_param_point(1)


@pytest.fixture(scope="session")
def params(point):
    return derive_params(point)


@pytest.fixture(scope="session", params=SEEDS)
def any_point(request):
    return make_param_point(request.param)


@pytest.fixture(scope="session")
def points():
    return [make_param_point(seed) for seed in SEEDS]


def assert_all_pass(records):
    bad = [r for r in records if r["status"] != "pass"]
    assert not bad, f"failed identities: {[r['identity_id'] for r in bad]}"
