import json

from ._core import (
    GaussianChannel,
    GaussianSource,
    RdfPoint,
    binary_entropy,
    binary_rdf_joint,
    gaussian_rdf_joint,
    gaussian_rdf_obs,
    gaussian_rdf_sem,
    main_capacity,
    preset_names,
    secrecy_term,
    semantic_rdf,
)
from . import _core

__version__ = "0.1.0"


def preset(name):
    return json.loads(_core.preset_json(name))


def run(config=None, **overrides):
    """Run a sweep. `config` is a dict in the CLI's JSON config format."""
    doc = dict(config or {})
    doc.update(overrides)
    return json.loads(_core.run_json(json.dumps(doc)))
