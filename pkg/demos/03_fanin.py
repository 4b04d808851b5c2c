"""
Fan-in from a V-groove to the tube
==================================

Guides start 127 um apart and are brought onto the 7 um tube along
raised-sine paths. The coupling profile along z shows when crosstalk
switches on, and the amplitude is carried through the fan-in with the ODE
solver before the static tube section.
"""
import numpy as np

from wgwalk import (AmplitudeState, FanInPath, TubeGeometry, build_tube, evolve_ode,
                    fanin_coupling_profile)
from wgwalk.optics import WaveguideSpec

spec = WaveguideSpec()
tube = TubeGeometry(6, 7.0)

for stages in (1, 2):
    fan = FanInPath(tube, stages=stages)
    profile = fanin_coupling_profile(fan, spec, int(fan.length) + 1)
    strongest = profile.kappa_z.max(axis=(1, 2))
    onset = profile.z_grid[np.argmax(strongest > 1e-6)]
    rec = evolve_ode(profile, AmplitudeState.localized(6, 0), fan.length, z_steps=200)
    print(f"{stages}-stage fan-in, {fan.length:.0f} um: C > 1e-6/um from z = {onset:.0f} um, "
          f"launch guide keeps {rec.intensity[-1, 0]:.3f} of the power")
    assert np.allclose(profile.kappa_z[-1], build_tube(tube, spec, neighbour_orders=3).kappa,
                       rtol=1e-12, atol=0)
