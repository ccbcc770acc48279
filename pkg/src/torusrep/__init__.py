"""Exact computations for bounded modules over vector fields on a torus.

Free-field (Fock space) realizations of the modules, the action of the
algebra ``D (x) K``, contragredient pairings and Gram ranks, critical
vectors and the chiral de Rham differential.  All arithmetic is exact
over Q; formal exponent vectors are handled as polynomial coefficients.
"""
from .core import Q, RPoly, SparseVec, Exponent, Bigrade, mpq, qstr, rvar, rconst
from .glrep import (GlModule, exterior_power, trivial_module, dual_module, casimir_scalar,
                    beta_value, h_from_beta, sl_type)
from .algebra import Gen, bracket, sigma
from .tensmod import TensorModule, derham_d, submodule_probe, form_module
from .fock import FockSpace, fock_character
from .fermion import FermionSpace, embed_virasoro_check
from .affine import (VermaRealization, IrreducibleRealization, FermionicRealization,
                     fermionic_realization, character_identity)
from .action import DKAction, structure_suite
from .pairing import DualPair, shapovalov_pair, gram_rank, character_certify
from .critical import (critical_solve, reduced_critical_solve, generated_by_top, is_exceptional,
                       exceptional_degree)
from .chiral import ChiralComplex, chiral_d, cohomology_dims

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
