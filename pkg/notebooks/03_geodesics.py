# %% [markdown]
# # Geodesics between light vertices
#
# Above `beta_c(0)` the cheapest way to a light vertex runs along light
# diagonals and square sides.  Between `sqrt(3/2)` and `beta_c(0)` it pays
# to cut through a dark square with S3-paths.  Below `sqrt(3/2)` only the
# brute-force oracle is available.

# %%
from pathlib import Path

from chessgeo import geodesic, render
from chessgeo.oracle import oracle_distance

FIG = Path(__file__).resolve().parent / "figures"
FIG.mkdir(exist_ok=True)

print("beta_c(0) =", geodesic.beta_c0())
for beta in (1.3, 1.23):
    res = geodesic.geodesic_to_light_vertex(2, 3, beta)
    print(beta, res.regime, res.optical_length)
    print(res.breakpoints)
    (FIG / f"geodesic_{beta}.svg").write_text(render.polyline_svg(res.breakpoints, beta))

# %% [markdown]
# The oracle agrees with the closed forms and only improves under refinement.

# %%
exact = geodesic.Lambda3(1.23)
for N in (4, 8, 16, 32, 64, 128):
    d = oracle_distance((0, 0), (3, 1), 1.23, N)
    print(f"N={N:4d}  oracle - exact = {d - exact:.3e}")

# %% [markdown]
# Below `tilde_beta` the diagonal followed by an S3-path is no longer the
# best way to `(4, 2)`: shifting the breakpoint right lowers the length.

# %%
print("tilde_beta =", geodesic.tilde_beta())
for beta in (1.1, 1.15, 1.2):
    print(f"beta={beta}: slope at t=0 is {geodesic.counterexample_slope(beta):+.5f}")
res = geodesic.oracle_geodesic(1, 2, 1.1, 64)
print("oracle path to (4, 2) at beta=1.1:", res.optical_length, "+-", res.error_bar)
print(res.breakpoints)
