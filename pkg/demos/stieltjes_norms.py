"""Lip and Wid seminorm estimates on both sides of the Laplace-Stieltjes transform."""

# %%
import numpy as np

from dirichlet_families import GeneralDirichletSeries
from dirichlet_families.stieltjes import (
    PiecewiseLinearFunction,
    final_diagnostic,
    lip_norm_estimate,
    wid_norm_estimate,
)

# %% A Lipschitz input: both estimates agree.
ramp = PiecewiseLinearFunction([0.0, 1.0], [1.0])
print("ramp      lip", lip_norm_estimate(ramp).value, " wid", wid_norm_estimate(ramp).value)

t = np.linspace(0.0, 20.0, 1001)
smooth = PiecewiseLinearFunction.from_samples(t, 1 - np.exp(-t))
print("1 - e^-t  lip", lip_norm_estimate(smooth).value, " wid", wid_norm_estimate(smooth).value)

# %% Step functions are not Lipschitz; the estimates keep growing and say so.
mu = np.array([0.5, 1.0, 3.0, 4.0, 5.0])
a = 2.0 ** -mu
limit = GeneralDirichletSeries(mu, a, 0.0)

aligned = [GeneralDirichletSeries(mu, a + 1 / (n * 2.0 ** np.arange(mu.size)), 0.0)
           for n in (1, 2, 4, 8)]
shifted = []
for n in (1, 2, 4, 8):
    m = mu.copy()
    m[1] = 1 + 1 / n
    shifted.append(GeneralDirichletSeries(m, a, 0.0))

for name, fam in (("same exponents", aligned), ("moving exponent", shifted)):
    print(name)
    rows = final_diagnostic(fam, limit, delta_min=1e-3, k_max=60)
    for n, row in zip((1, 2, 4, 8), rows):
        print(f"  n = {n}: wid {row.wid.value:9.4f} (saturated {row.wid.saturated})"
              f"   lip {row.lip.value:9.2f} (saturated {row.lip.saturated})")
