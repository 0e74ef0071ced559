# %% No-signaling, checked on random states and random channels
import time

from nosignal.nosig import fuzz_report
from nosignal.tensor import DimensionSpec

for dims in ("2x2", "2x3", "4x2", "3x3"):
    t0 = time.perf_counter()
    rep = fuzz_report(2024, 1000, DimensionSpec.parse(dims))
    print(f"{dims}: worst marginal change {rep['worst_distance']:.2e}  "
          f"pass={rep['pass']}  ({time.perf_counter() - t0:.1f} s)")
