# %% Selective vs non-selective measurement on the far particle
import numpy as np

from nosignal import run_erasure

rep = run_erasure("z")
print("non-selective spin1 marginal:\n", rep.marginals["spin1_nonselective"].matrix.real)

# conditioning on the outcome does change particle 1, but only if you are told the outcome
mixed = 0
for k, label in enumerate(("+1", "-1")):
    r = run_erasure("z", k)
    cond = r.marginals["spin1_conditional"].matrix
    print(f"outcome {label}: p={r.params['p_outcome']:.2f}\n", cond.real)
    mixed = mixed + r.params["p_outcome"] * cond
print("weighted average:\n", np.real(mixed))
