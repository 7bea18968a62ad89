"""Independent high-precision oracles for the frozen expected values in the C++ tests.

Run with: python3 tests/oracles/oracles.py
Uses mpmath closed forms and brute-force sweeps; shares no code with the library.
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 40


def f_closed_p4(lam, z):
    return 4 * lam * (mp.cos(z) + mp.cosh(z)) / 2


def f_general(p, lam, z):
    w = mp.exp(2j * mp.pi / p)
    return lam * sum(mp.exp(w**k * z) for k in range(p))


print("half cosh(pi/2)          ", mp.cosh(mp.pi / 2) / 2)
print("f'(1) p4 lam1/4          ", (mp.sinh(1) - mp.sin(1)) / 2)
print("2(cos2+cosh2)            ", 2 * (mp.cos(2) + mp.cosh(2)))
print("2(cos5+cosh5)            ", 2 * (mp.cos(5) + mp.cosh(5)))
print("2(cos4+cosh4)            ", 2 * (mp.cos(4) + mp.cosh(4)))
print("f(1.2) p4 lam1/4         ", (mp.cos(1.2) + mp.cosh(1.2)) / 2)
print("f(1) p4 lam1             ", 2 * (mp.cos(1) + mp.cosh(1)))

# brute-force circle sweeps for M(r)
for (p, lam, r) in [(4, 1.0, 5.0), (4, 1.0, 10.0)]:
    th = np.linspace(0, 2 * np.pi, 10**6, endpoint=False)
    z = r * np.exp(1j * th)
    w = np.exp(2j * np.pi / p)
    vals = lam * sum(np.exp(w**k * z) for k in range(p))
    i = np.argmax(np.abs(vals))
    print(f"sweep M p={p} lam={lam} r={r}: M={np.abs(vals[i])!r} logM={np.log(np.abs(vals[i]))!r} theta={th[i]}")

# a*: tan a = tanh a in (pi, 3pi/2)
astar = mp.findroot(lambda a: mp.tan(a) - mp.tanh(a), 3.9266)
print("a*                       ", astar, " t* =", mp.sqrt(2) * astar)
print("crit value lam1/4 p4     ", mp.cosh(astar) * mp.cos(astar))
print("crit value lam1 p4       ", 4 * mp.cosh(astar) * mp.cos(astar))

# fixed point of (cos x + cosh x)/2 in (0, pi/2)
xs = mp.findroot(lambda x: (mp.cos(x) + mp.cosh(x)) / 2 - x, 1.05)
print("x*                       ", xs)
print("multiplier               ", (mp.sinh(xs) - mp.sin(xs)) / 2)
x2 = mp.findroot(lambda x: (mp.cos(x) + mp.cosh(x)) / 2 - x, 2.3)
print("second fixed point       ", x2)

# g_min closed form
for p in range(4, 21, 2):
    c = p * mp.factorial(p - 2)
    print(f"g_min p={p:2d}  minimizer={c**(mp.mpf(1)/p)}  value={p / c**(mp.mpf(1)/p) * (1 + mp.mpf(1)/(p-1))}")
print("g_min p=3 value", 3 / (3 * mp.factorial(1))**(mp.mpf(1)/3) * (1 + mp.mpf(1)/2))

# series vs closed form for p=6, z=1
print("f p6 lam1 z=1            ", f_general(6, 1, 1))
print("series p6 z=1 (40 terms) ", 6 * sum(mp.mpf(1)**(6*j) / mp.factorial(6*j) for j in range(40)))

# first zero p=4
print("first zero t p4          ", mp.sqrt(2) * mp.pi / 2)
# orbit of 4 under p=4 lam=1
x = mp.mpf(4)
for n in range(3):
    x = 2 * (mp.cos(x) + mp.cosh(x))
    print(f"f^{n+1}(4) = {mp.nstr(x, 20)}")
