# %% [markdown]
# # Snell paths across one strip
#
# A ray that climbs one unit while crossing light thickness `p` and dark
# thickness `q` bends at every vertical interface.  The sine `sigma` of its
# angle in the light material is fixed by the rise condition, and the
# optical length follows from it.

# %%
import math

from chessgeo import medium
from chessgeo.snell import StripSpec, snell_partials, snell_polyline, snell_solution

spec = StripSpec(p=2.0, q=1.0, h=1.0, beta=1.5)
sol = snell_solution(spec)
print(f"sigma = {sol.sigma:.15f}")
print(f"optical length = {sol.length:.15f}")
print(f"straight segment would cost {medium.optical_length([(0, 0), (3, 1)], 1.5):.15f}")

# %% [markdown]
# The polyline splits at the integer abscissae.  Integrating the index along
# it reproduces the closed-form length.

# %%
pts = snell_polyline(0, 0, spec, "light")
for x, y in pts:
    print(f"({x:.6f}, {y:.6f})")
print("polyline length:", medium.optical_length(pts, 1.5))

# %% [markdown]
# The partial derivatives in the two thicknesses are the cosine-like
# factors of the two angles.  More dark material always costs more.

# %%
lp, lq = snell_partials(spec)
print(f"dL/dp = {lp:.6f}, dL/dq = {lq:.6f}")
for q in (0.0, 0.5, 1.0, 1.5, 2.0, 3.0):
    s = StripSpec(3.0 - q, q, 1.0, 1.5)
    print(f"q = {q:3.1f}: L = {snell_solution(s).length:.6f}  (Euclidean {math.hypot(3, 1):.6f})")
