"""B-polynomials of digraphs: exact computation, specialisations and identity checks."""
from types import ModuleType as _ModuleType

from .bcore import (b_binomial, b_eval_direct, b_poly, chromatic, potts_poly, readoff,
                    structural_readoff, t_mixed, tutte_poly)
from .digraph import (Digraph, Graph, MixedGraph, enumerate_digraphs, enumerate_pairings, modify,
                      structure)
from .embedding import RotationSystem, planar_dual
from .errors import (BPolyError, FamilyDegreeError, InternalAssertionError, InvalidDigraphError,
                     NonzeroRemainder, NotPlanarError, ParseError, PreconditionError,
                     UnknownCheckError, WorkBoundExceeded)
from .family import SignWord, b_m, b_m_eval, b_w, coflow_eval
from .identities import CheckReport, load_all_checks, run_check
from .poly import MultiPoly, QBinomial, exact_divide
from .quasisym import (QSymFunction, basis_change, involution, principal_specialization,
                       qsym_b, qsym_product, qsym_readoff)
from .survey import run_survey
from .textio import parse_any, parse_digraph, parse_mixed, render_digraph, render_mixed

__all__ = [name for name, obj in list(globals().items())
           if not name.startswith("_") and not isinstance(obj, _ModuleType)]
