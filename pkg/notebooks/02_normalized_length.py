# %% [markdown]
# # Normalized length and the critical indices
#
# `l(t, beta)` compares the Snell path from the origin to `(t + 1, 1)` with
# the cheapest dark-free path of the same horizontal extent.  Its minima sit
# at even `t`, and which even value wins is governed by the critical indices
# `beta_c(k)`.

# %%
from pathlib import Path

import numpy as np

from chessgeo import normlen, render

FIG = Path(__file__).resolve().parent / "figures"
FIG.mkdir(exist_ok=True)

print(normlen.CriticalTable.build(7).to_csv())

# %% [markdown]
# For each index the global minimizer of `l(., beta)` is `2 k_c(beta)`.

# %%
for beta in (1.26, 1.23, 1.2, 1.1, 1.05, 1.009):
    kc = normlen.k_c(beta)
    ts = np.arange(0, 2 * kc + 6 + 1e-9, 1e-3)
    values = normlen.norm_len(ts, beta)
    print(f"beta={beta:<6} k_c={kc}  grid argmin={ts[np.argmin(values)]:.3f}  min l={values.min():+.6f}")

# %% [markdown]
# Plots of the four qualitative shapes.

# %%
for beta in (1.26, 1.23, 1.2, 1.009):
    ts = np.arange(0, 16.0001, 0.01)
    svg = render.line_plot_svg(ts, normlen.norm_len(ts, beta), f"l(t, {beta})")
    (FIG / f"normlen_{beta}.svg").write_text(svg)
print("figures written to", FIG)

# %% [markdown]
# The increments `delta(k, beta)` approach `beta - 1` with a `1/k^2`
# correction; the leftover shrinks like `1/k^3`.

# %%
for k in (50, 100, 200, 400):
    d = normlen.delta(k, 1.5)
    rest = d - normlen.delta_asymptote(k, 1.5)
    print(f"k={k:4d}  delta={d:.12f}  k^3 * remainder={k**3 * rest:+.5f}")
