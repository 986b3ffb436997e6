"""Toolkit for rough formal contexts, their modal concept operators, the
one-sorted operator algebras they generate, the heterogeneous factorization
of those algebras, and a multi-type display-style sequent calculus over them.
"""

__all__ = ["__version__"]

__version__ = "0.1.0"
