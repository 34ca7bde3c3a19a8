"""Interrogation-based combinatory algebras on function spaces.

The models K2 and K2^p over the naturals (and Kleene's original K2), a coded
combinatory base algebra, oracle-relativized application, applicative
morphisms with their realizers, and property suites that check every
construction on sampled inputs.
"""
from k2lab._kernels import BACKEND
from k2lab.basepca import CODE_PCA, CodePCA, TupleScheme
from k2lab.coding import CANTOR, COMPACT, DELTA, CodingScheme
from k2lab.dialogue import Trace, fn_to_tree, interrogate, interrogate_at, tree_to_fn
from k2lab.errors import CodingOverflow, K2LabError, OutOfFuel, ParseError, Stuck
from k2lab.k2 import (Model, ModelTag, compile_strategy, make_k, make_k_prime_s_prime, make_model,
                      make_s, make_sigma)
from k2lab.oracle import OracleModel, join, numeral_apply, oracle_apply
from k2lab.partialfn import (OUT_OF_FUEL, UNDEFINED, Budget, Outcome, PartialFn, Table, Value,
                             eval_fn, load_oracle, parse_oracle)
from k2lab.report import CheckReport

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "CODE_PCA", "CodePCA", "TupleScheme", "CANTOR", "COMPACT", "DELTA", "CodingScheme",
    "Trace", "fn_to_tree", "interrogate", "interrogate_at", "tree_to_fn", "CodingOverflow",
    "K2LabError", "OutOfFuel", "ParseError", "Stuck", "Model", "ModelTag", "compile_strategy",
    "make_k", "make_k_prime_s_prime", "make_model", "make_s", "make_sigma", "OracleModel", "join",
    "numeral_apply", "oracle_apply", "OUT_OF_FUEL", "UNDEFINED", "Budget", "Outcome", "PartialFn",
    "Table", "Value", "eval_fn", "load_oracle", "parse_oracle", "CheckReport",
]
