# %% [markdown]
# # Joint limits and the wall at beta = a b^3
#
# Let `n` grow with `N` as `n_N = c N^p beta^N`.  Whether the joint limit
# converges depends on `R_N = (a b^3)^N / n_N`.

# %%
from superweier import PrecisionConfig, Schedule, classify, joint_convergence_run, validate_params
from superweier.regimes import phase_diagram
from superweier.svg import phase_svg

prec = PrecisionConfig(128)
p = validate_params("0.5", 3, "basic")
print("wall at", float(p.ab3))

# %%
for s in (Schedule(1, 0, 4.5), Schedule(1, 0, 13.5), Schedule(1, 1, 13.5), Schedule(1, 0, 40.5)):
    print(s, classify(p, s, prec).value)

# %%
trace = joint_convergence_run(p, Schedule(1, 1, 13.5), 4, 1, 801, prec)
for r in trace:
    print(r.N, r.n, f"R={float(r.R_N):.4f}", r.admissible,
          r.sup_err_E1 and f"{float(r.sup_err_E1):.4f} <= {float(r.bound_E1):.4f}")

# %%
# the map: measured errors only where the bound's hypothesis holds
cells = phase_diagram(p, [4.5, 13.5, 40.5, 121.5], 3, 1, prec, grid_points=201)
for c in cells:
    print(f"{float(c.beta):6.1f} N={c.N} n={c.n:8d} {c.regime.value:15s} {c.measured:16s} "
          f"{c.log10_error_or_bound:.3f}")
with open("regime_map.svg", "w", encoding="utf-8") as fh:
    fh.write(phase_svg(cells, p.ab3, title="a = 0.5, b = 3"))

# %%
# forcing measurements in cells where the bound does not apply
cells = phase_diagram(p, [4.5, 13.5, 40.5], 3, 1, prec, grid_points=201, measure_inadmissible=True)
for c in cells:
    print(f"{float(c.beta):6.1f} N={c.N} {c.regime.value:15s} {c.log10_error_or_bound:.3f}")
