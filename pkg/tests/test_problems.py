import numpy as np
import pytest

from ivmopt.ivf import eval_objective, finite_difference_gradient
from ivmopt.ncg import Status, VariantConfig, solve
from ivmopt.problems import (Family, datasheet_markdown, lookup,
                             problem_names, registry, sample_start)


class TestRegistry:
    def test_breadth(self):
        specs = registry()
        assert len(specs) >= 10
        dims = {s.ivmop.n for s in specs}
        assert min(dims) == 1 and max(dims) == 30
        assert {s.ivmop.m for s in specs} == {2, 3}
        assert {s.family for s in specs} == {Family.CONVEX_QUADRATIC,
                                             Family.NONCONVEX}

    def test_lookup(self):
        spec = lookup("iv-quad-tr1")
        assert spec.ivmop.n == 2 and spec.ivmop.m == 2
        assert spec.is_convex
        spec = lookup("iv-fon-like")
        assert spec.family is Family.NONCONVEX

    def test_lookup_unknown(self):
        with pytest.raises(KeyError, match="unknown problem"):
            lookup("iv-nonexistent")

    def test_names_are_unique_and_stable(self):
        names = problem_names()
        assert len(names) == len(set(names))
        assert names[0] == "iv-parab1"


class TestShippedInvariants:
    @pytest.mark.parametrize("spec", registry(), ids=lambda s: s.name)
    def test_endpoint_ordering_on_box_samples(self, spec):
        rng = np.random.default_rng(11)
        iv = spec.ivmop
        xs = rng.uniform(iv.box_lo, iv.box_hi, size=(10_000, iv.n))
        for obj in iv.objectives:
            for x in xs[:: max(1, len(xs) // 500)]:
                val = eval_objective(obj, x)  # raises on inversion
                assert val.lo <= val.hi
            # full vectorized sweep of the raw endpoint functions
            lows = np.array([obj.lower_fn(x) for x in xs])
            highs = np.array([obj.upper_fn(x) for x in xs])
            assert np.all(lows <= highs + 1e-12)

    @pytest.mark.parametrize("spec", registry(), ids=lambda s: s.name)
    def test_gradients_match_finite_differences(self, spec):
        rng = np.random.default_rng(13)
        iv = spec.ivmop
        n_samples = max(50, 1000 // iv.n)
        xs = rng.uniform(iv.box_lo, iv.box_hi, size=(n_samples, iv.n))
        for obj in iv.objectives:
            for fn, grad in ((obj.lower_fn, obj.lower_grad),
                             (obj.upper_fn, obj.upper_grad)):
                for x in xs:
                    fd = finite_difference_gradient(fn, x)
                    an = np.asarray(grad(x), float)
                    assert np.abs(fd - an).max() <= 1e-5 * (1.0 + np.abs(an).max())


class TestSampling:
    def test_deterministic_in_seed(self):
        spec = lookup("iv-bk1")
        a = sample_start(spec, 123456789)
        b = sample_start(spec, 123456789)
        np.testing.assert_array_equal(a, b)
        c = sample_start(spec, 987654321)
        assert np.any(a != c)

    def test_uniformity_statistics(self):
        spec = lookup("iv-sd-quad")
        iv = spec.ivmop
        samples = np.array([sample_start(spec, seed) for seed in range(10_000)])
        assert np.all(samples >= iv.box_lo) and np.all(samples <= iv.box_hi)
        center = 0.5 * (iv.box_lo + iv.box_hi)
        width = iv.box_hi - iv.box_lo
        assert np.all(np.abs(samples.mean(axis=0) - center) <= 0.01 * width)
        assert np.all(samples.min(axis=0) < iv.box_lo + 0.02 * width)
        assert np.all(samples.max(axis=0) > iv.box_hi - 0.02 * width)


class TestDatasheets:
    @pytest.mark.parametrize("spec", registry(), ids=lambda s: s.name)
    def test_datasheet_contents(self, spec):
        sheet = datasheet_markdown(spec)
        assert sheet.startswith(f"## {spec.name}")
        assert f"n = {spec.ivmop.n}" in sheet
        assert spec.family.value in sheet
        assert "box" in sheet


class TestConvexFamilySolves:
    @pytest.mark.parametrize("kind", ["sd", "prp", "hs", "ls"])
    def test_quick_convergence_sample(self, kind):
        # two representative convex problems, three starts each; the full
        # 20-start sweep over the whole convex family is acceptance work
        for name in ("iv-quad-tr1", "iv-vfm1-like"):
            spec = lookup(name)
            for seed in (1, 2, 3):
                x0 = sample_start(spec, seed)
                trace = solve(spec.ivmop, x0, VariantConfig(beta_kind=kind))
                assert trace.status is Status.CRITICAL
                assert min(np.linalg.norm(s.v) for s in trace.states) <= 1e-3
