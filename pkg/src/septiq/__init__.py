"""Exact computer algebra for node counts on a degree-7 surface family.

The package splits into an arithmetic kernel (fields, multivariate
polynomials, Groebner bases) and the study built on it: constructors for
the surface family, prime-field parameter searches, a six-step
singularity verification, and the characteristic-zero derivation of the
parameter condition.
"""

__version__ = "0.1.0"
