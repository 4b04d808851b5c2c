"""
Traversing glued binary trees
=============================

A quantum walker launched at one root of G_n reaches the other root with
large probability, while a classical walker hopping at the same rate gets
lost in the middle columns.
"""
from wgwalk.walks import glued_tree_traversal

for depth in (3, 4, 5, 6):
    res = glued_tree_traversal(depth, 10.0, 401, walkers=100_000, seed=1)
    print(f"n = {depth}: quantum exit peak {res.quantum_exit_peak:.3f}, "
          f"classical {res.classical_exit_peak:.4f}, "
          f"ratio {res.quantum_exit_peak / res.classical_exit_peak:6.1f}")

res = glued_tree_traversal(6, 6.0, 601, walkers=1000)
print(f"\nwave-front speed on G_6: {res.frontier_speed():.3f} columns per unit time "
      f"(2 sqrt 2 = {2 * 2 ** 0.5:.3f})")
