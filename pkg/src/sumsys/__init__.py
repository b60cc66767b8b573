"""Workbench for summation systems on finite carriers.

A summation system assigns sums to (possibly infinite) families of
carrier elements.  This package represents such families exactly on a
desk scale, checks a catalog of axioms against concrete systems with
replayable counterexamples, and implements the classical constructions
(zero extensions, finite-extension closures, induced topologies,
unconditional sums, endomorphism summation, quotients) next to
independent brute-force oracles.
"""

from . import carrier
from . import families
from . import reports
from . import systems
from . import axioms
from . import closures
from . import models
from . import series
from . import theorems
from . import topo
from . import uncond
from . import endo
from . import quotient
from . import modelfile
from . import cli

from .carrier import Carrier, cyclic, klein, bare, magma
from .families import (fin, fam, seq, ms, EMPTY, OMEGA,
                       family_to_json, family_from_json)
from .reports import Bounds, CheckReport, HypothesisNotMet, render_reports
from .systems import (SummationSystem, TableSystem, RuleSystem, Traits,
                      NotAFunction, InvalidFamily, table_from_dict)
from .axioms import AXIOM_IDS, check_axiom, run_suite, verify_witness
from .theorems import THEOREM_CHECKS, check_theorem, run_theorems
from .topo import (FiniteTopology, enumerate_topologies, induced_summation,
                   phi, sigma_topology, run_topo_suite)
from .uncond import SetSystem, uncond_system, psi, sigma_filter, run_uncond_suite
from .endo import MatrixFamily, SparseMatrix, catalog_family, run_endo_suite
from .quotient import quotient_system, is_sigma_closed, run_quotient_suite
from .modelfile import ModelSpec, InvalidSpec, parse_model, render_model, \
    build_model, resolve_model
from .series import SeriesFamily
