# %% Spin version: the same map on half a singlet
import numpy as np

from nosignal import run_epr_bohm

for gamma in np.linspace(0, np.pi, 5):
    rep = run_epr_bohm(gamma)
    p = rep.probabilities
    print(f"gamma={gamma:.3f}  P(-1) with T={p['P(-1) with T']:.4f}  "
          f"without T={p['P(-1) without T']:.4f}  "
          f"marginal shift={rep.params['marginal_distance']:.3f}")

# %% The shift in particle 1's marginal is what rules out any local CP map
print(run_epr_bohm(0.7).verdicts)
