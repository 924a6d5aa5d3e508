"""Prove planar Euclidean conjectures and export them as proofs without words.

The pipeline: parse a construction (text DSL or GeoGebra ``.ggb``), sample a
numeric witness, check the conjectured relation, saturate a forward-chaining
deduction engine to find a derivation, and emit a versioned JSON document that
renders as a self-contained interactive HTML page.
"""

__version__ = "0.1.0"
