"""
Quantum walks on graphs and on the line
=======================================

A continuous-time walk on a triangle, the Hadamard coined walk, and the
beamsplitter (scattering) walk that a waveguide lattice implements. The
variance of the coined walk grows as t^2 against t for a random walk.
"""
import numpy as np

from wgwalk.walks import (CoinedState, GraphSpec, ScatteringState, build_ctqw,
                          classical_walk_distribution, coined_walk, propagate,
                          scattering_step, walk_variance)

h = build_ctqw(GraphSpec("ring", 3, gamma=1.0))
t = np.linspace(0, 2 * np.pi / 3, 5)
p = np.abs(propagate(h, 0, t)[:, 0]) ** 2
print("triangle return probability:", np.round(p, 4))
print("(5 + 4 cos 3t)/9          :", np.round((5 + 4 * np.cos(3 * t)) / 9, 4))

# %%
traces = coined_walk(CoinedState.symmetric(), 100)
x, prob = traces[32]
print(f"\ncoined walk, 32 steps: peaks at x = {x[np.argmax(prob * (x < 0))]} and "
      f"{x[np.argmax(prob * (x > 0))]}, P(0) = {prob[x == 0][0]:.4f}")
times = np.arange(10, 101)
print(f"variance exponent: quantum {walk_variance(times, [traces[i] for i in times]):.3f}, "
      f"classical {walk_variance(times, [classical_walk_distribution(i) for i in times]):.3f}")

# %%
state = ScatteringState.single_edge(60, "right")
for _ in range(50):
    state = scattering_step(state, 1 / np.sqrt(2), 1 / np.sqrt(2))
verts, prob = state.position_distribution()
print(f"\nscattering walk, 50 columns: spread {np.sqrt(np.dot(prob, verts ** 2)):.1f} sites, "
      f"norm {state.norm():.12f}")
