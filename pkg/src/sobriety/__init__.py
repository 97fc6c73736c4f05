"""Finite sobriety checks and a countable dcpo gallery.

Finite side: posets as bit rows, the up-set (Scott) topology, sobriety
reports and the product-topology comparator.  Countable side: the coded
order on B, the posets P1 and P2, and the set A in their product, all
decided from finite representations.
"""

from .errors import SobrietyError
from .poset import FinitePoset, from_relations
from .topology import FiniteSpace, alexandrov_space, is_sober, open_set_lattice

__all__ = [
    "SobrietyError",
    "FinitePoset",
    "from_relations",
    "FiniteSpace",
    "alexandrov_space",
    "is_sober",
    "open_set_lattice",
]
__version__ = "0.1.0"
