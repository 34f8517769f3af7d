"""Finitely presented semigroups, string rewriting and certified compilation
of derivations into Tseytin's seven-relation semigroup."""

from .catalog import get_entry, get_named, get_tseytin, get_tseytin_specific, letter_statistics, resolve_name
from .compiler import (CompileContext, compile_commutation, compile_equality, compile_insertion,
                       compile_source_equality, compile_specific, compile_stylus, encode_derivation,
                       lift_to_augmented)
from .encoder import RecordMode, augment_special, build_pipeline, encode_presentation
from .errors import (BudgetExhausted, DecodeError, FactorizationError, InvalidInput, InvalidParams,
                     OrientError, ParseError, StepError, UnsupportedRecordMode)
from .presentations import (Derivation, DerivationStep, Kind, Presentation, Relation, check_derivation,
                            concat_derivations, derivation_from_json, derivation_to_json, embed_derivation,
                            format_presentation, invert_derivation, parse_presentation)
from .rewriting import (RewriteRule, RewriteSystem, check_local_confluence, complete_knuth_bendix,
                        critical_pairs, decide_termination_on_word, normalize, orient_presentation,
                        parse_rewrite_system)
from .search import Found, NotFoundWithinBudget, search_equality
from .words import (Alphabet, RankEncoder, decode_word, encode_word, factorize_over_rank_code, format_word,
                    parse_word, swap)

__version__ = "0.1.0"
