from .ctqw import (CtqwHamiltonian, GraphSpec, build_ctqw, column_hamiltonian, ctqw_evolve,
                   glued_tree_adjacency, propagate)
from .coined import CoinedState, HADAMARD, coined_step, coined_walk
from .gluedtree import GluedTreeTraversal, column_quantile, glued_tree_traversal
from .scattering import (ScatteringState, beamsplitter_block, column_unitary,
                         scattering_step)
from .stats import (classical_walk_distribution, position_variance, variance_exponent,
                    walk_variance)
