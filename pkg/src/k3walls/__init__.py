"""Exact wall-and-chamber computations for Bridgeland stability on K3 surfaces.

The engine works in the rank-3 algebraic Mukai lattice of a
Picard-rank-1 K3 surface: it evaluates central charges on the
(beta, alpha^2) half-plane, locates and classifies numerical walls for
a fixed class, and assembles the positive / movable / nef cones of the
corresponding moduli space.  All arithmetic is exact.
"""

from .classify import (InfiniteFamily, WallKind, WallLattice, WallTypeRecord,
                       classify_wall, roots_with_rank, solve_norm_pairing,
                       wall_lattice)
from .cones import (Chamber, ConeChart, InconsistentConeError, NSBasis, NSRay,
                    SqrtRay, assemble_cones, compute_l, orthogonal_basis,
                    positive_cone_boundary, reflect, wall_image)
from .halfplane import (HoleReport, Ordering, ReducedCharge, StabilityPoint,
                        expected_shift, find_holes_on_ray, is_valid_point,
                        realpart_vanishing_alpha2, reduced_charge, slope_compare,
                        slope_mu_beta)
from .lattice import (ChernVector, K3Config, MukaiVector, chern_to_mukai,
                      euler_chi, hrr_oracle, is_isotropic, is_primitive,
                      is_spherical, mukai_pairing, mukai_square,
                      mukai_to_chern_character)
from .report import (ClassifiedWall, ConfigError, RunConfig, RunReport,
                     load_annotations, parse_config, render_report, run_pipeline,
                     serialize_config, vertical_witness, wall_holes)
from .walls import (DestabilizerHit, SearchOutcome, SearchWindow, Semicircle,
                    Side, UnboundedSearchError, Vertical, Wall, WallHole,
                    decompose_class, numerical_wall, q_invariant,
                    ray_intersection, search_destabilizers,
                    side_constraint_check, walls_disjoint)

__version__ = "0.1.0"
