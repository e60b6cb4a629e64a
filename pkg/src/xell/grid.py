"""Default parameter grid used by the verification suites and the CLI."""
from __future__ import annotations

from fractions import Fraction as Fr

from .xcore import FAMILIES, ParamSet

GH = {
    "L1": [(Fr(1), None), (Fr(1, 2), None), (Fr(5, 2), None)],
    "L2": [(Fr(1), None), (Fr(1, 2), None), (Fr(5, 2), None)],
    "J1": [(Fr(1), Fr(1, 2)), (Fr(1, 2), Fr(1, 4)), (Fr(5, 2), Fr(1))],
    "J2": [(Fr(1), Fr(3)), (Fr(1, 2), Fr(5, 2)), (Fr(5, 2), Fr(7, 2))],
    "hDPT": [(Fr(1), Fr(27)), (Fr(1, 2), Fr(25)), (Fr(5, 2), Fr(30))],
}
ELLS = range(0, 5)
NS = range(0, 7)


def grid_params(families=None, ells=ELLS, gh=None):
    """ParamSets over the default (g, h) grid; hDPT keeps l < n_B."""
    for fam in families or FAMILIES:
        for g, h in (gh or GH)[fam]:
            for ell in ells:
                p = ParamSet(fam, g, h, ell)
                if fam == "hDPT" and ell >= p.n_B:
                    continue
                yield p


def grid_ns(params: ParamSet, ns=NS):
    """Degrees n to test at params; respects the hDPT bound n <= n_B - l."""
    for n in ns:
        if params.family == "hDPT" and n > params.n_B - params.ell:
            break
        yield n
