"""Central tolerances and enumeration caps."""
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    t_abs: float = 1e-13          # root polishing in the rotation angle
    identity: float = 1e-12       # frame reconstruction / trigonometric identities
    relative: float = 1e-10       # cross-checks between independent Z routes
    tie: float = 1e-12            # relative gap below which two maxima count as tied
    critical_band: float = 1e-9   # |w - w_c| below this is reported as critical
    root_residual: float = 1e-8   # |p(z)| / ||p||_1 accepted for a returned root


@dataclass(frozen=True)
class Caps:
    edges: int = 30               # edge-subset enumeration
    tutte_edges: int = 18         # deletion-contraction
    vertices: int = 24            # vertex-subset enumeration (rank-2 sums)
    spin_work: int = 16 ** 8      # r ** v(G) for the generic spin sum
    t0_grid: int = 4096           # scan points for critical points of r_0(t)
    bp_grid: int = 10_000         # scan points for fixed points of the BP map


TOL = Tolerances()
CAPS = Caps()


class CapExceeded(ValueError):
    """Raised when an exact enumeration would exceed its configured size cap."""
