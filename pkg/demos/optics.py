# %% Building the pre-detector state from beam splitters and a shifter
import json

import numpy as np

from nosignal.optics import propagate_network, reference_input, reference_network
from nosignal.states import greenberger_predetector, phase_aligned_distance

alpha, beta = 0.4, 1.1
net = reference_network(alpha, beta)
print(json.dumps(net.to_json(), indent=1))

out = propagate_network(net, reference_input())
target = greenberger_predetector(alpha, beta)
print("distance up to global phase:", phase_aligned_distance(out.amplitudes, target.amplitudes))
print("global phase:", np.round(np.vdot(target.amplitudes, out.amplitudes), 12))
