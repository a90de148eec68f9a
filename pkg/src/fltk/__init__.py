"""Hereditarily finite partial functions, their fevels, and the finite
model theory of the function and set hierarchies."""

from .hf_kernel import (HfFun, apply, compare, comprehend, fun_in, fun_subeq,
                        funset_of, is_funset, make, null)
from .hf_sets import HfSet

__all__ = [
    "HfFun", "HfSet", "apply", "compare", "comprehend", "fun_in", "fun_subeq",
    "funset_of", "is_funset", "make", "null",
]
