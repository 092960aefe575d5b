"""Hermitian moment functionals and their linear spectral transformations.

Every call takes DSL text operands and returns the same JSON report as the
``moment-lst`` command line tool, decoded into Python objects.
"""

import json

from . import _core

__all__ = ["MomentLstError", "run", "normalize", "verbs", "verify_rm", "verify_lst", "reduce", "classify",
           "decompose", "recompose", "moments"]


class MomentLstError(Exception):
    """A library error; ``code`` is the machine-readable error code."""

    def __init__(self, error):
        super().__init__(error.get("message", ""))
        self.code = error.get("code")
        self.details = error


def run(verb, **operands):
    """(exit_code, report) exactly as the command line tool produces them."""
    if "steps" in operands and not isinstance(operands["steps"], (str, type(None))):
        operands["steps"] = json.dumps(operands["steps"])
    code, text = _core.run(verb, **operands)
    return code, json.loads(text)


def _report(verb, **operands):
    code, report = run(verb, **operands)
    if code == 2:
        raise MomentLstError(report["error"])
    return report


def normalize(text):
    """Canonical DSL rendering of an expression."""
    return _core.normalize(text)


def verbs():
    return list(_core.verbs())


def verify_rm(u, v, l, m, **options):
    return _report("verify-rm", u=u, v=v, l=l, m=m, **options)


def verify_lst(u, v, lst, **options):
    return _report("verify-lst", u=u, v=v, lst=lst, **options)


def reduce(u, v, lst, **options):
    return _report("reduce", u=u, v=v, lst=lst, **options)


def classify(u, v, lst, **options):
    return _report("classify", u=u, v=v, lst=lst, **options)


def decompose(u, v, lst, **options):
    return _report("decompose", u=u, v=v, lst=lst, **options)


def recompose(steps, **options):
    return _report("recompose", steps=steps, **options)


def moments(f, n=32, **options):
    return _report("moments", f=f, n=n, **options)["moments"]
