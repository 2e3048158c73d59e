"""
Bounds for an arbitrary network
===============================

Every cut separating Alice from Bob limits the rate between them, so the
tightest bound is the minimum cut of the capacity graph.  Capacities are
the per-edge bound multiplied by how often the edge is used.
"""

from qnetbound import (
    ChannelSpec,
    Network,
    UseProfile,
    enumerate_cuts_oracle,
    min_cut,
    network_bound,
)

# %%
# A diamond: two relays, with a cross link between them.
edges = (
    ChannelSpec("A", "C1", length_km=40.0, loss_db_per_km=0.2),
    ChannelSpec("A", "C2", length_km=60.0, loss_db_per_km=0.2),
    ChannelSpec("C1", "C2", length_km=10.0, loss_db_per_km=0.2),
    ChannelSpec("C1", "B", length_km=70.0, loss_db_per_km=0.2),
    ChannelSpec("C2", "B", length_km=30.0, loss_db_per_km=0.2),
)
net = Network(("A", "C1", "C2", "B"), edges)

# %%
# Uniform use of every edge.
value, cut = min_cut(net)
print(f"min cut {value:.6g} bits, Alice side {cut.sorted_ids()}")

# %%
# The brute-force enumeration agrees.
ref, ref_cut = enumerate_cuts_oracle(net)
print(f"enumeration {ref:.6g} bits, Alice side {ref_cut.sorted_ids()}")

# %%
# Using the long A-C1 link more often moves the bottleneck.
profile = UseProfile({0: 4.0, 1: 1.0, 2: 1.0, 3: 4.0, 4: 1.0}, total_uses=11.0)
report = network_bound(net, profile, eps=1e-9)
print(f"raw {report.raw_min_cut_bits:.6g}  adjusted {report.adjusted_bits:.6g}")
print(f"per use {report.per_use_bits:.6g}  witness {report.witness_cut.sorted_ids()}")
