# %% [markdown]
# # The homogenized metric and its unit ball
#
# Zooming out, the chessboard behaves like a homogeneous medium with a
# crystalline metric.  Its unit ball is a regular octagon for large
# contrast, a sixteen-gon just below `beta_c(0)`, and is only partly known
# below `sqrt(3/2)`.

# %%
from pathlib import Path

from chessgeo import homog, render

FIG = Path(__file__).resolve().parent / "figures"
FIG.mkdir(exist_ok=True)

for beta in (1.5, 1.23, 1.1):
    ball = homog.unit_ball(beta)
    print(f"beta={beta}: {len(ball.vertices)} vertices, coverage={ball.coverage}, convex={ball.is_convex()}")
    print(ball.to_csv())
    (FIG / f"ball_{beta}.svg").write_text(render.ball_svg(ball))

# %% [markdown]
# Off the cones the metric for small contrast is only estimated, so the
# estimate is flagged as conjectural.

# %%
for x, y in ((1, 0), (1, 0.2), (1, 0.5), (1, 1)):
    est = homog.phi_estimate(x, y, 1.1, 40, refinement=16)
    known = homog.phi_on_cone(x, y, 1.1) if homog.in_cones(x, y, 1.1) else None
    print(f"({x}, {y}): estimate {est.value:.5f} +- {est.error_bound:.3f}  cone value {known}  "
          f"conjectural={est.conjectural}")
