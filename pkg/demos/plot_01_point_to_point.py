"""
Point-to-point and repeater chain bounds
========================================

A single fibre of length L passes a fraction eta = exp(-L / l_att) of the
light.  The squashed-entanglement bound caps how many bits per channel use
any protocol over it can distil.  Splitting the fibre with n ideal repeater
stations spreads the loss over n + 1 shorter segments.
"""

import math

from qnetbound import (
    ChainSpec,
    EpsilonParams,
    analytic_repeater_rate,
    chain_bound_per_use,
    chain_bound_total,
    db_to_attenuation_length,
    esq_lossy_bound,
    small_eta_chain_approx,
    time_to_first_bit,
)

# %%
# Standard telecom fibre loses 0.2 dB per km.
l_att = db_to_attenuation_length(0.2)
print(f"attenuation length at 0.2 dB/km: {l_att:.4f} km")

# %%
# The single-channel bound diverges as eta -> 1 and vanishes linearly as eta -> 0.
for eta in (0.999, 0.5, 0.1, 1e-3, 1e-6):
    print(f"eta={eta:<8g} bound={esq_lossy_bound(eta):.6g} bits/use")

# %%
# One repeater halfway along 200 km.
chain = ChainSpec(200.0, 1, loss_db_per_km=0.2)
print(f"segment transmittance  {chain.eta_segment:.6g}")
print(f"upper bound per use    {chain_bound_per_use(chain):.6g}")
print(f"small-eta approx       {small_eta_chain_approx(chain):.6g}")
print(f"ideal repeater rate    {analytic_repeater_rate(chain):.6g}")

# %%
# With a finite budget of uses the bound picks up a correction term.
for eps in (0.0, 1e-8, 1e-6):
    total = chain_bound_total(chain, 1e6, EpsilonParams(eps))
    print(f"epsilon={eps:<6g} total over 1e6 uses: {total:.6g} bits")

# %%
# Without repeaters a 1000 km link is useless on any human timescale.
rate = chain_bound_per_use(ChainSpec(1000.0, 0, loss_db_per_km=0.2))
for clock in (1e9, 1e10):
    years = time_to_first_bit(rate, clock) / (365.25 * 86400)
    print(f"{clock:.0e} Hz clock: first bit after ~{years:.0f} years")
print(f"ratio bound/achievable in the low-transmittance limit -> {4 / math.log(2):.4f}")
