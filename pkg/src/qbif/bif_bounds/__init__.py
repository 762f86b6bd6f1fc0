"""Lower and upper bounds on the stochastic bifurcation radius r_bif(c)."""
from .cycles import CycleData, find_attracting_cycle
from .disks import (Infeasible, InvariantDiskCertificate, check_invariant_disks, delta_max,
                    lower_bound_invariant_disks, maximize_rho, rho_of_delta)
from .mandelbrot import DistanceBracket, escapes, in_mandelbrot, mandelbrot_distance
from .parabolic import (ParabolicRootCertificate, ScanResult, canonical_tuple,
                        discriminant_upper_bound, interpolated_delta, replay_certificate,
                        scan_discriminant, symmetry_classes)
from .report import (DEFAULT_SCHEDULES, BifurcationReport, Bound, BoundsConfig,
                     ContainmentVerdict, combine_bounds, containment_transfer,
                     lipschitz_transfer, square_support_disks)
