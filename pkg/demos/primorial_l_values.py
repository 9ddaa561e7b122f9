"""L(chi_D, 1) for D the product of the first i primes, with a plot."""

# %%
import sys
from pathlib import Path

from dirichlet_families import primorial_experiment
from dirichlet_families.svg import emit_svg

imax = int(sys.argv[1]) if len(sys.argv) > 1 else 6
rows = primorial_experiment(imax, tol=1e-6)

# %%
print(f"{'i':>2} {'D_i':>8} {'disc':>8} {'L(chi, 1)':>12} {'|L - 1|':>9}")
for r in rows:
    print(f"{r.i:>2} {r.d:>8} {r.discriminant:>8} {r.l_value:>12.8f} {abs(r.l_value - 1):>9.4f}")

# %% The values wander around 1 rather than settling at this scale.
out = Path("primorial.svg")
emit_svg([(r.i, r.l_value) for r in rows], out, x_label="i", y_label="L(chi_D_i, 1)",
         title="L(chi, 1) at primorial discriminants")
print("wrote", out.resolve())
