"""Differential polynomial systems, prolongations and effective Nullstellensatz bounds."""

from .bounds import (BoundReport, BudgetExceeded, Symbolic, Unsupported, T_value, ackermann,
                     ackermann_recursive, alpha, lemma_order_bound, lower_bound_formula, main_bound)
from .certify import (Certificate, CertRow, PolyCertificate, VerifyReport, expand,
                      leibniz_power_check, make_certificate, verify)
from .commpoly import Poly, PolyRing, x_ring
from .diffring import (DerivOp, DiffPoly, DiffRing, DiffVar, apply_theta, compare_rank,
                       differentiate, measures, rank_key)
from .families import FamilySpec, certificate, generate
from .linear import (LinearDiffSystem, LinearThreshold, NotLinear, build_matrix, linear_membership,
                     linear_threshold, min_prolongation_linear, min_rep_degree, representation,
                     tilde, untilde)
from .polyideal import (GroebnerBasis, Guard, ResourceExceeded, consistency_profile, dimension,
                        groebner_basis, ideal_membership, is_inconsistent, normal_form,
                        radical_membership)
from .prolong import DiffSystem, prolong, snapshot, snapshot_ring, theta_set, unsnapshot
from .textio import (ArityError, DocumentError, GrammarError, UnknownIndeterminate, parse_certificate,
                     parse_polynomials, parse_system, render)

__version__ = "0.1.0"
