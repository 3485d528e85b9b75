"""Kinetic transport schemes, space-time systems and their spectra."""

import json

from ._aplab import *  # noqa: F401,F403
from ._aplab import GridConfig, __version__


def config(**values):
    """GridConfig from keyword values, with the same defaults and checks as a JSON file."""
    return GridConfig.from_json(json.dumps(values))
