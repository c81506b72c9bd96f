"""Per-graph properties tracked by the experiments.

The giant-component test is exact: component fractions are kept as
rationals and compared to beta by cross-multiplication, so beta = 1/4 on
n = 10^4 never wobbles on a boundary-sized component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, components, edge_count


def as_beta(value) -> Fraction:
    """Normalize a beta given as Fraction, int, str, or float.

    Floats are read through their shortest decimal form, so 0.3 means
    3/10, not the nearest binary double.
    """
    if isinstance(value, Fraction):
        beta = value
    elif isinstance(value, int):
        beta = Fraction(value)
    elif isinstance(value, float):
        beta = Fraction(str(value))
    elif isinstance(value, str):
        beta = Fraction(value)
    else:
        raise TypeError(f"cannot interpret beta from {type(value).__name__}")
    if not 0 < beta < 1:
        raise ValueError("beta must lie strictly between 0 and 1")
    return beta


@dataclass
class PropertyVector:
    """Evaluated properties of one sampled graph.

    plopu_violation_found and lop_exact stay None unless the trial
    was asked to run the corresponding (more expensive) search.
    """

    plopl: bool
    conn: bool
    giant_fraction: Fraction
    pedge: bool
    plopu_violation_found: bool | None = None
    lop_exact: bool | None = None


def pconn(g: Graph, comps=None) -> bool:
    if comps is None:
        comps = components(g)
    return len(comps) <= 1


def giant_fraction(g: Graph, comps=None) -> Fraction:
    if g.n == 0:
        return Fraction(0)
    if comps is None:
        comps = components(g)
    return Fraction(len(comps[0]), g.n)


def pgiant(g: Graph, beta, comps=None) -> bool:
    """Largest component covers at least a beta fraction, compared exactly."""
    return giant_fraction(g, comps) >= as_beta(beta)


def pedge(g: Graph) -> bool:
    """Edge budget m <= 2n."""
    return edge_count(g) <= 2 * g.n
