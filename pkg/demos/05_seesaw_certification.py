"""Certifying the biseparable bound by explicit maximization.

For every bipartition, alternate eigenvector ascent on one side against the
other (a see-saw) until the product-state value stops improving.  Every
bipartition of every ensemble lands on the same P_sep — the bound does not
depend on how the particles are split.  An independent grid sweep over the
relevant two-dimensional spans confirms the small cases.
"""

from spinwitness import (
    Bipartition,
    SpinEnsemble,
    build_qk_direct,
    enumerate_bipartitions,
    grid_certify,
    seesaw_maximize,
    witness_report,
)

for spins in [(0.5, 0.5, 0.5), (1, 0.5), (0.5, 1, 1), (0.5,) * 5]:
    e = SpinEnsemble(spins)
    w = build_qk_direct(e)
    sep = witness_report(e.K).P_sep_float
    print(f"spins {spins}  (K = {e.K}, P_sep = {sep})")
    for bip in enumerate_bipartitions(e):
        r = seesaw_maximize(w, bip, restarts=16, seed=0)
        label = f"{list(bip.subset_J)} | {list(bip.complement)}"
        print(f"  {label:<22} best = {r.best_value:.12f}   iters = {r.iterations}"
              f"   converged = {r.converged}")
    print()

print("independent grid certification (spin-1/2 triple, split 1 | 2,3):")
e = SpinEnsemble((0.5, 0.5, 0.5))
w = build_qk_direct(e)
bip = Bipartition(e, (0,))
for resolution in (6, 12, 24, 48):
    print(f"  resolution {resolution:>3}: max over grid = {grid_certify(w, bip, resolution):.12f}")
print(f"  analytic bound:                 {witness_report(3).P_sep_float:.12f}")
