"""Exact computer algebra for cyclic-permutation-twisted modules over
tensor powers of the free-fermion vertex operator superalgebra.

The package constructs parity-twisted (Ramond-sector) modules, transports
them across the tensor-power twist via an exponentiated-Virasoro change of
coordinates, and verifies every structural identity coefficient-exactly
inside explicit exponent windows.
"""

__version__ = "0.1.0"
