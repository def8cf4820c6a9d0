# %% [markdown]
# # How close is F_n to the wave it imitates?
#
# The bound `(1/n) sqrt(K^2 e^{2K/n} + (J/n)^2 e^{K/n})` holds on `|x| <= M`
# once `n >= 4M/pi`.  Below we put it next to a measured sup error.

# %%
from superweier import PrecisionConfig, single_term_bound, single_term_sup_error
from superweier.svg import error_chart_svg

prec = PrecisionConfig(128)

# %%
b = single_term_bound(100, "pi", 1, prec)
err, where = single_term_sup_error(100, "pi", 1, 2001, prec)
print(f"K={float(b.K):.6f} J={float(b.J):.6f} bound={float(b.bound):.6f}")
print(f"measured sup {float(err):.6f} at x={float(where)}")

# %%
# errors halve with n once the first-order K term dominates
ns = [64, 128, 256, 512, 1024, 2048]
errors, bounds = [], []
for n in ns:
    e, _ = single_term_sup_error(n, "3pi", "0.5", 1001, prec)
    errors.append(float(e))
    bounds.append(float(single_term_bound(n, "3pi", "0.5", prec).bound))
for n, e, bd in zip(ns, errors, bounds):
    print(f"{n:5d}  {e:.3e}  {bd:.3e}  ratio {e / bd:.3f}")

# %%
with open("error_vs_n.svg", "w", encoding="utf-8") as fh:
    fh.write(error_chart_svg(ns, errors, bounds, title="alpha = 3 pi, M = 0.5"))
