from __future__ import annotations

import pytest

from mvbounds._backend import ENV_DISABLE_NUMBA, numba_enabled


@pytest.fixture(params=["numba", "numpy"])
def backend(request, monkeypatch):
    """Run a test under each kernel backend; numba skips when unavailable."""
    if request.param == "numba":
        monkeypatch.delenv(ENV_DISABLE_NUMBA, raising=False)
        if not numba_enabled():
            pytest.skip("numba backend unavailable")
    else:
        monkeypatch.setenv(ENV_DISABLE_NUMBA, "1")
    return request.param
