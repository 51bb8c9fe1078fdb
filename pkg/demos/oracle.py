"""Random (g+1)-relator quotients of F_c versus the measure formula."""
import math
import time

from sigmagroups.freetower import build_free_quotient
from sigmagroups.measure import brute_force_meas_c, monte_carlo_counts

# class 2: all 729 tuples, exact
fq2 = build_free_quotient(3, 2, 2)
for cl in brute_force_meas_c(fq2):
    print("order 3^%d" % cl.pres.n, cl.measure)

# class 3: sampled, with the stderr of each frequency
fq3 = build_free_quotient(3, 2, 3)
n = 5_000
t = time.time()
res = monte_carlo_counts(fq3, n, seed=1)
print(f"{n} samples in {time.time() - t:.0f}s")
for fp, (est, se) in sorted(res.estimates().items(), key=lambda kv: -kv[1][0]):
    print(f"{est:.4f} +- {se:.4f}  3^{fp.order_exp} class {fp.p_class} y=3^{fp.y_exp} {fp.ipad}")
print("total", sum(res.counts.values()), "of", n, "sqrt(n) =", round(math.sqrt(n)))
