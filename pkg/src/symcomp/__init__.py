"""Exact-arithmetic workbench for stratified symmetric powers.

Modules: partitions (merge order and layers), ranges (stability windows),
exactlin (rational linear algebra, complexes, coinvariants), spectral
(filtration pages, totalization, flag sets), planecells (plane configuration
cell model), strata (first-page assembly, certificates, oracles), transfer
(coset-sum transfers, triangular algebra), monodromy (orientation signs),
randgen (seeded instances), cli (batch front end).
"""

__version__ = "0.1.0"

from ._kernel import BACKEND as KERNEL_BACKEND

__all__ = ["KERNEL_BACKEND", "__version__"]
