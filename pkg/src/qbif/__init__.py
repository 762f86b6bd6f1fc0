"""Bounds on the stochastic bifurcation radius of z -> z^2 + c_n with disk noise.

Submodules: ``poly_algebra`` (extended-precision polynomials), ``noise``
(disk laws and reproducible streams), ``dynamics`` (orbits and escape),
``escape_stats`` (Monte Carlo), ``bif_bounds`` (the bounds themselves),
``render`` and ``cli``.
"""
from .bif_bounds import (BifurcationReport, BoundsConfig, CycleData, InvariantDiskCertificate,
                         ParabolicRootCertificate, check_invariant_disks, combine_bounds,
                         containment_transfer, discriminant_upper_bound, find_attracting_cycle,
                         lipschitz_transfer, lower_bound_invariant_disks, mandelbrot_distance,
                         maximize_rho, rho_of_delta, scan_discriminant)
from .dynamics import (OrbitOutcome, escape_radius, green_value, iterate_orbit,
                       superattracting_parameter)
from .errors import (DegreeBoundExceeded, InsufficientData, InvalidArgument, NotFound,
                     NumericFailure, QbifError, ResourceLimitError)
from .escape_stats import TailFit, TEstimate, classify_connectedness, estimate_T, tail_fit
from .noise import DiskLaw, NoiseRealization, StreamSeed, realize_sequence, sample_disk
from .poly_algebra import (ComplexPoly, compose_quadratics, discriminant, interpolate_from_circle,
                           poly_roots)
from .render import ImageBuffer, render_parameter_overlay, render_random_julia

__version__ = "0.1.0"
