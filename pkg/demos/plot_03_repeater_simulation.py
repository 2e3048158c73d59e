"""
Monte Carlo of an ideal repeater chain
======================================

Each link retries until a photon gets through, a geometric number of
attempts with success probability eta.  One end-to-end bit needs every
link to succeed once, so the long-run rate is one over the total attempts.
"""

from qnetbound import ChainSpec, SimConfig, analytic_repeater_rate, simulate

chain = ChainSpec(200.0, 3, loss_db_per_km=0.2)
analytic = analytic_repeater_rate(chain)

# %%
# The estimate tightens as trials grow; the seed makes runs repeatable.
for trials in (1_000, 10_000, 100_000):
    res = simulate(SimConfig(chain, trials, seed=42))
    err = (res.rate_per_use - analytic) / analytic
    print(f"{trials:>7} trials: rate {res.rate_per_use:.5f} +- {res.stderr_rate:.5f} "
          f"(analytic {analytic:.5f}, rel err {err:+.2%})")

# %%
# Mean attempts per link should be close to 1 / eta.
res = simulate(SimConfig(chain, 100_000, seed=42))
print("mean uses per link:", ", ".join(f"{m:.2f}" for m in res.per_link_mean_uses),
      f"(expected {1 / chain.eta_segment:.2f})")
