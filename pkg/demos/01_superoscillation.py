# %% [markdown]
# # A band-limited function that oscillates faster than its band
#
# `F_n(x; alpha) = (cos(x/n) + i alpha sin(x/n))^n` is a sum of waves with
# frequencies in `[-1, 1]`, yet near the origin it looks like `exp(i alpha x)`.

# %%
import gmpy2

from superweier import (
    PrecisionConfig, eval_fn, eval_fn_sum, fourier_expansion, local_wave_number,
    superosc_boundary, to_cartesian,
)

prec = PrecisionConfig(128)

# %%
# the closed form against the target wave at x = 1, alpha = pi
for n in (10, 100, 1000):
    z = to_cartesian(eval_fn(n, "pi", 1, prec), prec=prec)
    print(n, complex(z), abs(complex(z) + 1))

# %%
# every frequency sits inside the band; the coefficients are huge and alternate in sign
terms = fourier_expansion(20, "3pi", prec)
print(min(float(t.frequency) for t in terms), max(float(t.frequency) for t in terms))
print(max(abs(float(t.coefficient.re)) for t in terms))

# %%
# summing them anyway still gives the closed form, at the price of many guard bits
print(complex(eval_fn_sum(20, "3pi", "0.1", prec)))
print(complex(to_cartesian(eval_fn(20, "3pi", "0.1", prec), prec=prec)))

# %%
# local wave number: above 1 inside the window, below 1 past the boundary
edge = superosc_boundary(10, 4, prec)
print("boundary", float(edge))
for x in (0, 2, float(edge), 8):
    print(x, float(local_wave_number(10, 4, x, prec)))

# %%
# outside the window the modulus explodes; the log-polar form keeps it representable
z = eval_fn(1000, 10 ** 6, 1500, prec)
print("log10 |F| =", float(z.log10_modulus))
