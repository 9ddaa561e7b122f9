"""Recovering coefficient partial sums from the series on a vertical line."""

# %%
import math

import numpy as np

from dirichlet_families import PerronConfig, classical_series, perron_sum
from dirichlet_families.convergence import perron_reference

# one term at mu = log 2
d = classical_series(2, [0.0, 1.0], abscissa=0.0)
cfg = PerronConfig(c=1.0, T=1e4)

# %% Left of the exponent, on it (half weight) and right of it.
for x in (0.5, math.log(2), 1.0):
    res = perron_sum(d, x, cfg)
    print(f"x = {x:.4f}: Perron {res.value.real:+.5f}  exact {perron_reference(d, x).real:+.2f}")

# %% Just past a jump the error shrinks as the truncation height T grows.
x = math.log(2) + 0.05
for T in (1e2, 1e3, 1e4):
    res = perron_sum(d, x, PerronConfig(c=1.0, T=T))
    print(f"T = {T:>7.0f}: error {abs(res.value - 1):.2e}")

# %% Summatory function of the first few zeta coefficients.
z = classical_series(40, np.ones(40), abscissa=1.0)
for x in (1.1, 2.0, 3.5):
    res = perron_sum(z, x, PerronConfig(c=2.0, T=2e3))
    print(f"#{{n : log n <= {x}}} ~ {res.value.real:.3f}  (exact {perron_reference(z, x).real:.1f})")
