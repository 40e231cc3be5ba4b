"""Paraconsistent probabilistic logics over Belnap-Dunn events.

Two-layered formulas: Belnap-Dunn formulas inside modal atoms (``Pr`` for
the ±-probability logic, ``Bl/Db/Cf/Uc`` for the 4-probability logic) and
a Łukasiewicz-style outer layer.  The package evaluates such formulas on
weighted models, translates between the two logics, and decides validity
and satisfiability exactly with a constraint tableau and rational linear
programming.
"""

from .bd import BDModel, bd_entails, bd_equiv, dual_model, extension, extensions
from .decision import (Invalid, Sat, Unsat, Valid, decide_entails_four, decide_sat_four,
                       decide_sat_pm, decide_valid_four, decide_valid_pm)
from .embeddings import nnf, pm_to_four, to_four, to_pm
from .errors import DialectError, InputError, ModelError, ParseError, ResourceLimit
from .linear import feasible, vertex_solution
from .luk import eval_four, eval_pm
from .modelfile import dump_model, parse_model
from .syntax import Dialect, parse_bd, parse_outer, render
from .tableau import prove_luk_valid

__version__ = "0.1.0"
