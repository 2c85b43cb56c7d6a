# Initialize lrc package
from .number_field import NumberField, AlgebraicInt, nf_new, ai_mul, ai_norm, norm_bound
from .prime_tools import SplitPrime, next_split_primes, roots_mod_p, construct_field
from .code_params import CodeSpec, FamilyParams, design_code, design_family, good_split_check, compute_m, rate
from .codec import Codeword, MessagePoly, encode, local_recover, global_decode, verify
from .errors import LrcError

__all__ = [
    'NumberField', 'AlgebraicInt', 'nf_new', 'ai_mul', 'ai_norm', 'norm_bound',
    'SplitPrime', 'next_split_primes', 'roots_mod_p', 'construct_field',
    'CodeSpec', 'FamilyParams', 'design_code', 'design_family', 'good_split_check', 'compute_m', 'rate',
    'Codeword', 'MessagePoly', 'encode', 'local_recover', 'global_decode', 'verify',
    'LrcError',
]
