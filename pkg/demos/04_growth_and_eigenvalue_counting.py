"""Solution growth and Prüfer eigenvalue counting at finite scale.

Two finite-x observables drive the regularity diagnostics: the log-growth
h(x,z) = log|u(x,z)|/x of the Dirichlet solution, and the zero-counting
CDF lambda -> N(x,lambda)/x from the Prüfer angle.  For nice potentials
h(x,z) approaches the Martin function and the counting CDF approaches the
spectral measure.
"""
import numpy as np

from schreg import martin as M, potentials as P, propagation as PR

free_set = M.GapSet(b0=0.0)
decaying = P.Decaying(1.0, 2.0)      # V(x) = 1/(1+x)^2

print("h(x, z) -> M(z) for the decaying potential, z = -1")
target = M.martin_function(free_set, (), -1.0).value
for x in (10.0, 100.0, 1000.0):
    h = PR.log_growth(decaying, x, -1.0, step=0.02)
    print(f"  x={x:7.0f}  h={h:.8f}  M={target:.8f}  gap={abs(h-target):.2e}")

print("\nEigenvalue counts N(x, lambda) for V(x)=1/(1+x)^2, x=50")
for lam in (1.0, 4.0, 9.0, 16.0):
    n = PR.eigenvalue_count(decaying, 50.0, lam)
    free_n = PR.eigenvalue_count(P.Constant(0.0), 50.0, lam)
    print(f"  lambda={lam:5.1f}  count={n:3d}   (V=0 gives {free_n})")

print("\nZero-counting CDF vs the free measure sqrt(lambda)/pi at x=500")
lam = np.array([1.0, 5.0, 10.0, 20.0])
cdf = PR.zero_counting_cdf(decaying, 500.0, lam, step=0.02).cdf
for lv, cv in zip(lam, cdf):
    print(f"  lambda={lv:5.1f}  rho_x={cv:.6f}  rho_E={np.sqrt(lv)/np.pi:.6f}")

print("\nInside a spectral gap the CDF is nearly flat: square wave, x=500")
ps = P.PeriodicSquare(0.5)
gap = np.array([9.33, 10.40])        # strictly inside the first gap
c = PR.zero_counting_cdf(ps, 500.0, gap, step=0.01).cdf
print(f"  mass in the shrunk gap = {c[1] - c[0]:.6f}  (bound 2/x = {2/500.0})")
