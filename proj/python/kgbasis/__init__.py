"""Filtered multiplicative bases of modular group algebras.

Every function returns plain Python data decoded from the library's JSON
reports. Groups are catalog names ("G5", "D") with parameters, or short
specs such as "Q8", "SD16", "C4xC2".
"""

import json

from ._core import KgbError, version
from . import _core

__version__ = version

__all__ = [
    "KgbError",
    "catalog",
    "group",
    "jennings",
    "verify",
    "construct",
    "certify",
    "search",
    "matrix",
]


def _field(field):
    if isinstance(field, int):
        return field, 1
    p, k = field
    return p, k


def catalog():
    return json.loads(_core.catalog())


def group(name, **params):
    return json.loads(_core.group_info(name, params))


def jennings(name, field=2, **params):
    p, k = _field(field)
    return json.loads(_core.jennings(name, params, p, k))


def verify(basis_file):
    """Verify a basis file, given as JSON text or as a decoded dict."""
    if not isinstance(basis_file, str):
        basis_file = json.dumps(basis_file)
    return json.loads(_core.verify_file(basis_file))


def construct(name, family, field=2, mu=None, **params):
    """Returns (report, basis_file_text)."""
    p, k = _field(field)
    report, text = _core.construct(name, params, p, k, family, mu)
    return json.loads(report), text


def certify(name, field=2, degree=2, workers=1, tags=False, **params):
    p, k = _field(field)
    return json.loads(_core.certify(name, params, p, k, degree, workers, tags))


def search(name, field=2, budget=10**8, workers=1, prefilter=True, **params):
    """Returns (report, basis_file_text or None)."""
    p, k = _field(field)
    report, text = _core.search(name, params, p, k, budget, workers, prefilter)
    return json.loads(report), text


def matrix(workers=1):
    return json.loads(_core.matrix(workers))
