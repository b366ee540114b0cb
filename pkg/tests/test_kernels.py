import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from freegog import _pykernels as py, kernels

from .oracles import naive_reduce

c = pytest.importorskip("freegog._ckernels", reason="compiled kernels not built")

letter = st.integers(1, 4).flatmap(lambda i: st.sampled_from((i, -i)))
raw = st.lists(letter, max_size=30)
reduced = raw.map(py.free_reduce)


@given(raw)
def test_free_reduce(t):
    assert c.free_reduce(t) == py.free_reduce(t) == naive_reduce(t)


@given(reduced, reduced)
def test_multiply(u, v):
    assert c.multiply(u, v) == py.multiply(u, v) == naive_reduce(u + v)


@given(reduced)
def test_inverse(u):
    assert c.inverse(u) == py.inverse(u)


@given(reduced, st.integers(-6, 6))
def test_power(u, k):
    want = naive_reduce((u if k >= 0 else py.inverse(u)) * abs(k))
    assert c.power(u, k) == py.power(u, k) == want


@given(raw, st.lists(reduced, min_size=4, max_size=4))
def test_substitute(t, imgs):
    neg = [py.inverse(x) for x in imgs]
    want = naive_reduce(tuple(y for x in t for y in (imgs[x - 1] if x > 0 else neg[-x - 1])))
    assert c.substitute(t, imgs, neg) == py.substitute(t, imgs, neg) == want


@given(reduced)
def test_peel_count(u):
    assert c.peel_count(u) == py.peel_count(u)


def test_compiled_backend_is_default():
    assert kernels.BACKEND == "cython"


def test_pure_python_override():
    env = dict(os.environ, FREEGOG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import freegog; print(freegog.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"


def test_benchmark_smoke():
    root = os.path.dirname(os.path.dirname(__file__))
    out = subprocess.run([sys.executable, os.path.join(root, "benchmarks", "bench_kernels.py"),
                          "--repeat", "3", "--skip-end-to-end"],
                         capture_output=True, text=True, check=True).stdout
    assert "substitute" in out and out.count("x\n") == 5
