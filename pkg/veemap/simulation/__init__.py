"""
Simulation module - Brute-force oracles for veemap.

Contains naive reference versions of:
- Pointwise V / 2V action on long finite words (pointwise)
- Factor language of hull configurations (hull_factors)
- Mixing by connecting words (mixing)
- Membership scans and table-filling equivalence (automata)

pointwise and automata import the engines and are not re-exported here.
"""

from veemap.simulation.hull_factors import hull_factors
from veemap.simulation.mixing import brute_force_mixing

__all__ = [
    "brute_force_mixing",
    "hull_factors",
]
