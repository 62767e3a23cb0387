"""Sweep the families across a decade of primes and watch U_d * p stay flat.

Writes sweep.csv next to this script and prints the comparison against
the proven bound constants and a seeded random baseline.
"""

from pathlib import Path

from gowersff import emit, parse_family, random_baseline, scan_primes

primes = (101, 211, 499, 997)
records = []
for family in ("legendre_poly:1,1,0,1", "inverse_phase", "kloosterman", "legendre_curve"):
    spec = parse_family(family)
    for d in (1, 2, 3):
        recs, errors = scan_primes(spec, d, primes)
        assert not errors
        records.extend(recs)

records.sort(key=lambda r: (r.family, r.d, r.p))
out = Path(__file__).with_name("sweep.csv")
emit(records, "csv", str(out))
print(f"wrote {out}")

print(f"\n{'family':<26} {'d':>2} " + "".join(f"{p:>12}" for p in primes))
for family in sorted({r.family for r in records}):
    for d in (1, 2, 3):
        row = [r for r in records if r.family == family and r.d == d]
        cells = "".join(f"{r.u_d_times_p:12.4g}" for r in row)
        print(f"{family:<26} {d:>2} {cells}")

print("\nValues above are U_d * p: no growth with p means U_d tracks 1/p.")
print("The proven constants are huge by comparison, e.g. the d = 2")
print(f"Kloosterman constant is 20^24 = {20.0**24:.3g}.")

base = random_baseline(101, 2, trials=50, seed=1)
print(f"\nrandom +-1 baseline at p=101, d=2 (50 trials, seed 1): "
      f"mean U_2 * p = {base.mean_u_d_times_p:.3f}")
print("The algebraic families land in the same range as random noise.")
