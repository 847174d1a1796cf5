"""Tools for elementary abelian p-extensions of rational function fields.

Subpackages cover explicit finite fields (gf), univariate polynomials and
rational functions with places and partial fractions (upoly), additive
polynomials and their root groups (addpoly), Artin-Schreier type extension
analysis (asext), Witt vector arithmetic and Artin-Schreier-Witt extensions
(witt), brute-force oracles (oracle) and the command line front end (cli).
"""

__version__ = "0.1.0"

from .errors import AspwError
from .gf import FFElem, FieldCtx, SubfieldEmbedding, embed_field, frobenius_power, make_field, trace_map

__all__ = [
    "AspwError",
    "FFElem",
    "FieldCtx",
    "SubfieldEmbedding",
    "embed_field",
    "frobenius_power",
    "make_field",
    "trace_map",
    "__version__",
]
