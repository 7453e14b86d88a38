"""Special functions evaluated from scratch: gamma, Airy, 1F1, parabolic cylinder."""
from ._value import FunctionValue
from .airy import airy_ai, airy_ai_prime, airy_all, airy_arrays, airy_bi, airy_bi_prime
from .gamma import gamma, rgamma
from .hypergeom import (kummer_1f1, pcf_d, pcf_d_arrays, pcf_d_prime, pcf_u, pcf_u_arrays,
                        pcf_u_origin, pcf_u_prime)

__all__ = [
    "FunctionValue", "gamma", "rgamma",
    "airy_ai", "airy_ai_prime", "airy_bi", "airy_bi_prime", "airy_all", "airy_arrays",
    "kummer_1f1", "pcf_u", "pcf_u_prime", "pcf_d", "pcf_d_prime",
    "pcf_u_arrays", "pcf_d_arrays", "pcf_u_origin",
]
