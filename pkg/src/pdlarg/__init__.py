"""Prioritised default logic computed directly and through structured
argumentation, with the preference orders and checks that relate them."""

from .logic import (And, Atom, BOTTOM, Bottom, Formula, FormulaSyntaxError, Implies, Not, Or,
                    Signature, TOP, Top, UnknownAtom, consistent, contraries, entails,
                    format_formula, is_contrary, negate, parse_formula)
from .defaults import (InconsistentFacts, Linearisation, LinearisationError, NormalDefault,
                       PrioritisedDefaultTheory, TheoryError, compute_extension,
                       enumerate_linearisations, generating_defaults,
                       non_blocked_defaults_characterised, non_blocked_defaults_constructive,
                       sceptical_inferences, semi_active_defaults)
from .orders import (Kind, Outcome, Preset, SetComparison, check_reasonable_inducing,
                     check_reasonableness, check_toset_properties, compare)
from .argumentation import (Argument, DefeasibleRule, Instantiation, instantiate,
                            structure_preference_order)
from .dung import (AbstractFramework, ExtensionSet, compute_semantics, defeat_graph,
                   generate_stable_extension, sceptical_conclusions, verify_representation)
from .pdt_format import PdtError, load_theory, parse_theory, print_theory

__version__ = "0.1.0"
