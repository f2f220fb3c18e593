import math

import numpy as np
import pytest

import isacpn


def test_total_level():
    level = 10 * math.log10(isacpn.integrate_psd(isacpn.reference_pll_model(), 500e6))
    assert abs(level + 47.90) <= 0.05


def test_scaled_model_and_psd():
    m = isacpn.reference_pll_model()
    s = m.scaled(30.0)
    assert s.gamma == pytest.approx(1000.0)
    f = np.array([5e4, 1e6, 1e8])
    assert np.allclose(isacpn.eval_psd(s, f), 1000.0 * isacpn.eval_psd(m, f))


def test_synthesis_shape_and_determinism():
    a = isacpn.synthesize(isacpn.reference_pll_model(), 1e9, 1 << 14, 3)
    b = isacpn.synthesize(isacpn.reference_pll_model(), 1e9, 1 << 14, 3)
    assert a.shape == (1 << 14,)
    assert np.array_equal(a, b)


def test_monostatic_zero_delay():
    assert isacpn.combined_level_monostatic(isacpn.reference_pll_model(), 0.0, 500e6) == 0.0


def test_max_range():
    assert isacpn.max_unambiguous_range(16384, 1e9, "bistatic") == pytest.approx(4910, rel=5e-3)
    with pytest.raises(ValueError):
        isacpn.max_unambiguous_range(16384, 1e9, "tristatic")


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        isacpn.integrate_psd(isacpn.reference_pll_model(), 1.0)


def test_null_experiment(tmp_path):
    assert "null" in isacpn.experiment_names()
    files = isacpn.run_experiment("null", out=str(tmp_path))
    text = open(files[0]).read()
    assert "range_pslr,-13.30" in text


def test_data_files_present():
    import os

    path = os.path.join(os.environ["ISACPN_DATA_DIR"], "pn", "tr38803_ue.yaml")
    assert isacpn.load_psd_model(path).gamma == 1.0
