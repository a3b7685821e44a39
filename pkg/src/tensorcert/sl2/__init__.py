"""SL_2 in characteristic p: characters, linkage, tilting modules and the ideals J_r."""

from .characters import (Character, check_linkage_gap, check_tilting_char_necessary, dot_orbit,
                         linkage_orbit, simple_character, tilting_character, weyl_character)
from .decompose import TiltingDecomposition, tilting_decompose
from .jideal import JIdeal, quotient_by_J, word_table
from .lemmas import certify_envelope_hypothesis_sl2, default_samples, verify_st_strongly_faithful
from .tilt import TiltCategory, TiltData
from .tl import TLDictionary, rho, tl_category

__all__ = ["Character", "weyl_character", "simple_character", "tilting_character", "linkage_orbit",
           "dot_orbit", "check_linkage_gap", "check_tilting_char_necessary", "tilting_decompose",
           "TiltingDecomposition", "JIdeal", "quotient_by_J", "word_table", "TiltCategory",
           "TiltData", "verify_st_strongly_faithful", "certify_envelope_hypothesis_sl2",
           "default_samples", "TLDictionary", "rho", "tl_category"]
