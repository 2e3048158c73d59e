"""
Choosing a route
================

Along a single path the bound is the harmonic combination of its edges, so
the best path minimises the sum of inverse edge bounds: an ordinary
shortest-path problem.
"""

from qnetbound import ChannelSpec, Network, UseProfile, best_path, network_bound, optimal_use_allocation
from qnetbound import esq_lossy_bound, transmittance

edges = (
    ChannelSpec("A", "B", length_km=160.0, loss_db_per_km=0.2),
    ChannelSpec("A", "C1", length_km=80.0, loss_db_per_km=0.2),
    ChannelSpec("C1", "B", length_km=80.0, loss_db_per_km=0.2),
    ChannelSpec("A", "C2", length_km=85.0, loss_db_per_km=0.16),
    ChannelSpec("C2", "B", length_km=85.0, loss_db_per_km=0.16),
)
net = Network(("A", "C1", "C2", "B"), edges)

route = best_path(net)
print("best route:", " -> ".join(route.nodes), f"({route.per_use_bound_bits:.6g} bits/use)")

# %%
# Spending uses along the route in the optimal ratio reproduces that value
# as a min-cut bound, which the full network can only raise.
esq = [esq_lossy_bound(transmittance(net.edges[i])) for i in route.edges]
uses = {i: 0.0 for i in range(len(edges))}
for i, m in zip(route.edges, optimal_use_allocation(esq)):
    uses[i] = m
report = network_bound(net, UseProfile(uses, total_uses=1.0))
print(f"min cut with route-only uses: {report.per_use_bits:.6g} bits/use")
