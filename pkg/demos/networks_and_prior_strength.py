"""
Random network structures and prior strength
============================================

Seeded random DAGs over patient nodes, a two-node status -> result network,
and a curve showing prior beliefs washing out as data accumulate.
"""

from pathlib import Path

import numpy as np

from bdt import DiagnosticTest, convergence_table, random_dag, topological_order, two_node_diagnostic_net
from bdt.network import FIG4_GROUPS, uniform_stream
from bdt.reporting import convergence_csv, convergence_panels

# the same seed always gives the same graph
dag = random_dag(100, 0.01, seed=42)
print(f"{dag.n} nodes, {len(dag.edges)} edges, first few: {dag.edges[:5]}")
assert random_dag(100, 0.01, seed=42).to_dot() == dag.to_dot()
assert topological_order(dag)[0] == "V1"

# edge counts follow Binomial(4950, 0.01)
counts = [len(random_dag(100, 0.01, s).edges) for s in range(200)]
print(f"mean edges over 200 seeds: {np.mean(counts):.2f} (expected 49.5)")
print("first uniforms for seed 42:", np.round(uniform_stream(42, 3), 6))

# two nodes, status -> result, is all a diagnostic test needs
net = two_node_diagnostic_net(DiagnosticTest(0.95, 0.98, 0.001))
print(f"P(status + | result +) = {net.status_given_result('+', '+'):.4f}")

# low- and high-risk beliefs both drift toward 0.5 as the sample grows
curves = convergence_table(FIG4_GROUPS)
print(convergence_csv(curves)[:200], "...")
out = Path("demo_output")
out.mkdir(exist_ok=True)
convergence_panels(out / "prior_strength.svg", curves)
(out / "network.dot").write_text(dag.to_dot())
print("wrote", out / "prior_strength.svg", "and", out / "network.dot")
