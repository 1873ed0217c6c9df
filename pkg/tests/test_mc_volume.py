import math

import numpy as np
import pytest

from paulivol import (
    FR_TOTAL,
    FisherRaoDomainError,
    RegionExpr,
    SamplerConfig,
    VolumeEstimate,
    contains,
    fr_volume_mc,
    hs_volume_mc,
    ratio_mc,
    region_hit_count,
    sample_region,
)


def _cfg(samples, seed=0, **kw):
    return SamplerConfig(samples=samples, seed=seed, **kw)


def test_sampler_config_validation():
    with pytest.raises(ValueError):
        SamplerConfig(samples=0, seed=0)
    with pytest.raises(ValueError):
        SamplerConfig(samples=10, seed=-1)
    with pytest.raises(ValueError):
        SamplerConfig(samples=10, seed=2**64)
    with pytest.raises(ValueError):
        SamplerConfig(samples=10, seed=0, chunk_size=0)
    cfg = SamplerConfig(samples=10**5, seed=3, chunk_size=30000)
    assert list(cfg.chunks()) == [(0, 30000), (1, 30000), (2, 30000), (3, 10000)]


def test_volume_estimate_validation():
    VolumeEstimate(0.5, 0.01, 100, "mc-hs", 0)
    with pytest.raises(ValueError):
        VolumeEstimate(0.5, -0.01, 100, "mc-hs", 0)
    with pytest.raises(ValueError):
        VolumeEstimate(0.5, 0.01, 100, "bogus", 0)
    with pytest.raises(ValueError):
        VolumeEstimate(0.5, 0.01, -1, "mc-hs", 0)
    # exact results carry no samples
    VolumeEstimate(0.5, 0.0, 0, "exact")


def test_hs_volume_deterministic():
    a = hs_volume_mc(RegionExpr.parse("CPT"), _cfg(10**5, seed=42))
    b = hs_volume_mc(RegionExpr.parse("CPT"), _cfg(10**5, seed=42))
    assert a.value == b.value
    assert a.std_error == b.std_error
    c = hs_volume_mc(RegionExpr.parse("CPT"), _cfg(10**5, seed=43))
    assert c.value != a.value


def test_hs_volume_pt_is_exactly_one():
    est = hs_volume_mc(RegionExpr.parse("PT"), _cfg(10**4))
    assert est.value == 1.0
    assert est.std_error == 0.0
    assert est.method == "mc-hs"


def test_hs_volume_cpt_matches_exact():
    est = hs_volume_mc(RegionExpr.parse("CPT"), _cfg(10**5, seed=1))
    assert est.std_error > 0
    assert abs(est.value - 1 / 3) < 3 * est.std_error


def test_hs_volume_chunking_covers_all_samples():
    whole = hs_volume_mc(RegionExpr.parse("CPT"), _cfg(10**5, seed=9, chunk_size=10**5))
    ragged = hs_volume_mc(RegionExpr.parse("CPT"), _cfg(10**5, seed=9, chunk_size=37))
    assert whole.samples == ragged.samples == 10**5
    # different chunking means a different stream, but the same law
    assert abs(whole.value - ragged.value) < 3 * math.hypot(
        whole.std_error, ragged.std_error
    ) + 1e-12


def test_complement_estimates_sum_to_one():
    expr = RegionExpr.parse("CPT")
    hits, n = region_hit_count(expr, _cfg(10**6, seed=4))
    assert n == 10**6
    assert hits / n + (n - hits) / n == 1.0


def test_ratio_of_nested_regions_is_one():
    # every trace-localizing map is positive-divisible
    est = ratio_mc(
        RegionExpr.parse("PDIV"), RegionExpr.parse("CPT,TLG"), _cfg(10**4, seed=2)
    )
    assert est.value == 1.0
    assert est.std_error == 0.0


def test_ratio_matches_exact():
    est = ratio_mc(
        RegionExpr.parse("TLG"), RegionExpr.parse("CPT"), _cfg(10**5, seed=5)
    )
    assert abs(est.value - 3 / 16) < 3 * est.std_error


def test_ratio_with_empty_denominator_warns_and_is_nan():
    cfg = _cfg(1, seed=0)
    with pytest.warns(UserWarning):
        est = ratio_mc(RegionExpr.parse("PT"), RegionExpr.parse("CPT,TLG,EBC"), cfg)
    assert math.isnan(est.value)
    assert math.isnan(est.std_error)


def test_fr_volume_requires_cpt():
    with pytest.raises(FisherRaoDomainError):
        fr_volume_mc(RegionExpr.parse("PT"), _cfg(100))
    with pytest.raises(FisherRaoDomainError):
        fr_volume_mc(RegionExpr.parse("TLG"), _cfg(100))


def test_fr_volume_of_full_cpt_is_total():
    # every Dirichlet(1/2,...) draw lies in the region, so the estimate
    # collapses to the closed-form total with zero spread
    est = fr_volume_mc(RegionExpr.parse("CPT"), _cfg(10**4, seed=0))
    assert est.value == FR_TOTAL
    assert est.std_error == 0.0
    assert est.method == "mc-fr"


def test_fr_volume_subregion_is_smaller():
    cfg = _cfg(10**5, seed=1)
    sub = fr_volume_mc(RegionExpr.parse("CPT,EBC"), cfg)
    assert 0 < sub.value < FR_TOTAL
    assert sub.std_error > 0


def test_fr_volume_stable_under_rechunking():
    a = fr_volume_mc(RegionExpr.parse("CPT,TLG"), _cfg(10**5, seed=3, chunk_size=2**16))
    b = fr_volume_mc(RegionExpr.parse("CPT,TLG"), _cfg(10**5, seed=3, chunk_size=2**15))
    assert abs(a.value - b.value) < 3 * math.hypot(a.std_error, b.std_error)


def test_sample_region_members_and_determinism():
    cfg = _cfg(500, seed=10)
    expr = RegionExpr.parse("CPT,EBC")
    first = list(sample_region(expr, cfg))
    assert len(first) == 500
    assert all(contains(expr, l) for l in first)
    second = list(sample_region(expr, cfg))
    assert [tuple(l) for l in first] == [tuple(l) for l in second]


def test_sample_region_cube_proposals():
    cfg = _cfg(200, seed=11)
    expr = RegionExpr.parse("PT,TLG")
    draws = list(sample_region(expr, cfg))
    assert len(draws) == 200
    assert all(contains(expr, l) for l in draws)


def test_sample_region_is_unbiased_on_symmetric_region():
    # the channel tetrahedron is symmetric under each sign flip pair,
    # so each coordinate has mean zero
    cfg = _cfg(10**5, seed=12)
    arr = np.array([tuple(l) for l in sample_region(RegionExpr.parse("CPT"), cfg)])
    stderr = arr[:, 0].std() / math.sqrt(len(arr))
    assert abs(arr[:, 0].mean()) < 3 * stderr
