# %% [markdown]
# # Superoscillation from interpolation nodes
#
# Interpolating `h -> exp(i h x)` at nodes in `[-1, 1]` and evaluating the
# interpolant at `h = alpha` gives another superoscillating sequence.

# %%
import cmath

from superweier import NodeSet, PrecisionConfig, eval_lagrange_tn

prec = PrecisionConfig(128)

# %%
for kind in (NodeSet.equispaced, NodeSet.chebyshev):
    nodes = kind(16)
    for x in ("0.1", "0.5", "1"):
        t = complex(eval_lagrange_tn(nodes, "pi", x, prec))
        print(nodes.kind, x, abs(t - cmath.exp(1j * cmath.pi * float(x))))

# %%
# the coefficients grow like a binomial, so extrapolation to large alpha is costly
for alpha in ("pi", "3pi", "9pi"):
    print(alpha, complex(eval_lagrange_tn(NodeSet.chebyshev(24), alpha, "0.05", prec)))
