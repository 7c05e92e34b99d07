"""Exact free Lie algebra computations for the Kashiwara-Vergne problem mod p."""
from .chvergne import (ch_oracle, ch_series, check_kv, extract_AB, named_series,
                       valuation_profile, vergne_FG, vergne_UV)
from .charp import (build_psi, check_eq4, check_eq5, conjecture_report,
                    depth_lemma_check, jacobson)
from .grt import check_grt, t4_bracket, t4_generator, t4_selfcheck
from .lie import (LiePoly, LieSeries, bracket, depth, is_lie_dynkin,
                  lie_from_assoc, lyndon_basis, substitute, tau)
from .notation import parse_assoc, parse_lie
from .scalars import (GF, QQ, FpScalar, bernoulli, p_valuation, reduce_mod_p,
                      staudt_check, wilson_check)
from .words import XY, Alphabet, AssocPoly, cyclic_trace, quadratic_trace

__version__ = "0.1.0"
