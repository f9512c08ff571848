"""Game semantics for multiplicative linear logic with MIX.

Modules: ``formula`` (syntax), ``proofnet`` (switching test), ``game`` and
``strategy`` (finite games, strategies, composition), ``semantics``
(denotation and link extraction), ``completeness`` (the reduction to simple
sequents and the catalog oracle), ``corpus`` and ``cli``.
"""

__version__ = "0.1.0"
