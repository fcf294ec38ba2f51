"""Phase-space densities, classical flows and TDSE references (hbar = m = 1)."""

import json

from ._phaseflow import (  # noqa: F401
    GaussianPacket,
    Grid1D,
    PhaseflowError,
    __version__,
    ab_shift,
    beyond_turning_fraction,
    delta_scattering_coefficients,
    fringe_period,
    uncertainty_product,
    wigner_transform,
)
from . import _phaseflow as _core


def list_scenarios():
    """Scenario catalog as a list of dicts."""
    return json.loads(_core.list_scenarios())


def run_scenario(config, out_dir):
    """Run a scenario config (dict) and return the manifest (dict)."""
    return json.loads(_core.run_scenario(json.dumps(config), str(out_dir)))
