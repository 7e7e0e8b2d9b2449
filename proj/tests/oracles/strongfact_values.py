# Extended-precision reference values for the test-function pipeline.
# Run: python3 tests/oracles/strongfact_values.py
from mpmath import mp, mpf, mpc, quad, exp, log, sqrt, inf, linspace, nstr

mp.dps = 90


def bump_transform(xi):
    xi = mpf(xi)
    n = max(8, int(xi / 2) + 8)
    f = lambda x: exp(-1 / (1 - x * x)) * mp.cos(x * xi) if x < 1 else mpf(0)
    return 2 * quad(f, linspace(0, 1, n + 1))


print("# bump transform, int exp(-1/(1-x^2)) cos(x xi) over |x|<1")
for xi in [0, 1, 3, 10, 50, 200, 1000, 3000]:
    print(xi, nstr(bump_transform(xi), 17))

mp.dps = 30


def ell(z):
    f = lambda t: exp(-(z - t) ** 2) * log(1 + abs(t))
    x = z.real
    pts = sorted(set([-inf, min(0, x - 12), 0, max(0, x - 12)] + [x + k for k in range(-12, 13)] + [inf]))
    return quad(f, pts) / sqrt(mp.pi)


print("# smoothed log off the real axis")
for z in [mpc(0, 1.5), mpc(0.3, 1.5), mpc(1, 1.5), mpc(5, 1.5), mpc(40, 1.5), mpc(200, 1.5), mpc(2, 0.75)]:
    v = ell(z)
    print(z, nstr(v.real, 17), nstr(v.imag, 17))
