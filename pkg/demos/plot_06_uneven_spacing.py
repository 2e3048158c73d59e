"""
Uneven repeater placement
=========================

When segments differ the bound is set by how uses are split among links.
The best split gives each link uses inversely proportional to its bound,
and equal spacing is the best placement for long enough segments.
"""

import numpy as np

from qnetbound import ChainSpec, chain_bound_per_use, uneven_chain_bound_per_use

length, n = 600.0, 2
equal = chain_bound_per_use(ChainSpec(length, n, loss_db_per_km=0.2))
print(f"equal spacing: {equal:.6g} bits/use")

rng = np.random.default_rng(1)
for _ in range(5):
    cuts = np.sort(rng.uniform(0, length, n))
    sp = np.diff(np.concatenate([[0.0], cuts, [length]]))
    val = uneven_chain_bound_per_use(ChainSpec(length, n, tuple(sp), loss_db_per_km=0.2))
    print(f"spacings {np.round(sp, 1)} -> {val:.6g} ({val / equal:.3%} of equal)")
