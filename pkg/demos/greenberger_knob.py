# %% The interferometer proposal: turning gamma looks like a remote switch
import numpy as np

from nosignal import run_greenberger
from nosignal.channels import greenberger_T, validate_channel, complete_to_deterministic

# alpha = pi/4, beta = 0 sits at the balanced point: 50/50 at gamma = 0
for gamma in (-np.pi / 2, -np.pi / 4, 0.0, np.pi / 4, np.pi / 2):
    p = run_greenberger(np.pi / 4, 0.0, gamma).probabilities
    hd, gc = p["P(h,d')"], p["P(g,c')"]
    print(f"gamma={gamma:+.3f}  P(h,d')={hd:.4f}  P(g,c')={gc:.4f}  p_success={p['p_success']:.4f}")

# %% Why it fails: T is not trace preserving
T = greenberger_T(0.0)
print(validate_channel(T.as_channel()).to_json())

# %% The legal version: T/sqrt(2) plus its complement is a channel
ch = complete_to_deterministic(T.matrix / np.sqrt(2))
print("completed channel passes:", validate_channel(ch).passes)
rep = run_greenberger(0.3, 0.9, 1.7)
print("photons untouched by the completed channel:", rep.verdicts["completion_leaves_photons_invariant"])
