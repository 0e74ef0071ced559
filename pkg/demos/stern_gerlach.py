# %% A real local unitary: Stern-Gerlach split plus rotation on one path
import numpy as np

from nosignal import run_stern_gerlach
from nosignal.tensor import hermitian_eigenvalues

rep = run_stern_gerlach(1.2)
for key, value in sorted(rep.probabilities.items()):
    print(f"{key:28s} {value:.4f}")

# %% Particle 1 sees the same maximally mixed state; the entanglement moved to spin1 x position2
print("spin1 marginal:\n", rep.marginals["spin1_after"].matrix.real.round(12))
print("spin1+pos2 spectrum:", hermitian_eigenvalues(rep.marginals["spin1_pos2"].matrix).round(12) + 0.0)
print(rep.verdicts)
