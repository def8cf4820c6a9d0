# %% [markdown]
# # Order of limits matters
#
# Fix `n` and let `N` grow: the superoscillating Weierstrass sum blows up away
# from the origin, because consecutive terms grow by roughly `a b^n`.
# Fix `N` and let `n` grow: it converges to the truncated sum `W_N`.

# %%
import math

from superweier import (
    PrecisionConfig, divergence_probe, global_bound, global_min_n, iterated_limit_check,
    ratio_sequence, validate_params,
)

prec = PrecisionConfig(128)
p = validate_params("0.5", 3, "basic")

# %%
rho = ratio_sequence(p, 2, "0.5", 20, prec)
print([round(float(r), 4) for r in rho[::4]], "-> a b^2 =", 0.5 * 9)

# %%
for x in ("0.5", 0):
    probe = divergence_probe(p, 2, x, 50, 60, prec)
    print(x, probe.diverged, probe.N_hit, math.exp(float(probe.partial_log_modulus)))

# %%
# now the other order: N = 4 fixed, n growing
M = "0.3"
n_list = [64, 256, 1024, 4096]
errors = iterated_limit_check(p, 4, M, n_list, prec, grid_points=1001)
min_n = global_min_n(p, M, 4, prec)[0]
for n, e in zip(n_list, errors):
    bound = global_bound(p, M, 4, n, prec).bound if n >= min_n else None
    print(n, f"{float(e):.4g}", "bound", bound and f"{float(bound):.4f}")
