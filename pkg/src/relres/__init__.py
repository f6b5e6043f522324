"""Distance-based quantum resources for two-qubit relativistic scenarios.

Coherence (Hellinger / l1), trace-distance discord and Bures-distance
entanglement for X states, applied to a Gisin state seen across a
Schwarzschild horizon and to detector pairs thermalized by Unruh or
Hawking noise.
"""

from relres.errors import DomainError, NoRoot, NotConverged, NotHermitian
from relres.resources import ResourceReport, XState, resource_report

__all__ = [
    "DomainError",
    "NoRoot",
    "NotConverged",
    "NotHermitian",
    "ResourceReport",
    "XState",
    "resource_report",
]

__version__ = "0.1.0"
