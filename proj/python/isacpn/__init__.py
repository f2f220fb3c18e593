"""Phase-noise simulation for OFDM-based ISAC (Python bindings)."""

import os as _os
from pathlib import Path as _Path

_data = _Path(__file__).with_name("data")
if _data.is_dir():
    _os.environ.setdefault("ISACPN_DATA_DIR", str(_data))

from ._isacpn import *  # noqa: E402,F401,F403
from ._isacpn import (  # noqa: E402
    ConfigError,
    DomainError,
    PnPsdModel,
    experiment_names,
    integrate_psd,
    reference_pll_model,
    run_experiment,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "PnPsdModel",
    "experiment_names",
    "integrate_psd",
    "reference_pll_model",
    "run_experiment",
]
