import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cohoforge import kernels
from cohoforge.linalg import _pack, _unpack

BACKENDS = kernels.available_backends()
needs_compiled = pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")


def test_backend_selected_at_import():
    assert kernels.BACKEND in ("compiled", "pure")
    assert "pure" in BACKENDS


@needs_compiled
@given(st.integers(0, 2**32 - 1), st.integers(1, 90), st.integers(1, 150))
def test_gf2_backends_agree(seed, rows, cols):
    a = np.random.default_rng(seed).integers(0, 2, size=(rows, cols), dtype=np.uint8)
    out = {}
    for name, impl in BACKENDS.items():
        m = _pack(a)
        piv = impl.rref_gf2_packed(m, cols)
        out[name] = (list(piv), _unpack(m[: len(piv)], cols).tolist())
    assert out["pure"] == out["compiled"]


@needs_compiled
@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 5, 7]), st.integers(1, 40), st.integers(1, 40))
def test_modp_backends_agree(seed, p, rows, cols):
    a = np.random.default_rng(seed).integers(0, p, size=(rows, cols), dtype=np.uint8)
    out = {}
    for name, impl in BACKENDS.items():
        m = a.copy()
        piv = impl.rref_modp(m, p, cols)
        out[name] = (list(piv), m[: len(piv)].tolist())
    assert out["pure"] == out["compiled"]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_pivot_search_can_stop_early(name):
    impl = BACKENDS[name]
    a = np.array([[0, 0, 1], [0, 1, 0]], dtype=np.uint8)
    m = a.copy()
    assert list(impl.rref_modp(m, 3, 1)) == []
    m = a.copy()
    assert list(impl.rref_modp(m, 3, 2)) == [1]
