"""SLOCC classification flags and the local-invariance checks of each family.

    python demos/classify_tour.py
"""
import math

from fourqubit.families import build_family, family_criteria, parse_family_spec, slocc_report

specs = ["ghz4:gamma=0.6", "ghz4:gamma2=0.5", "phi2:J=2,Js=2", "phi2:J=2,Js=1e9",
         f"gag:gamma={1 / math.sqrt(8)!r}", "gag:gamma=0.2", "gabgd:a=0.6,b=0.3,c=0.2,d=0.1",
         f"gabgd:a=0.6,b=0.3,c=0.15,d={math.sqrt(0.0275)!r}"]

# a - d = b + c in the first gabgd spec, which puts it on Delta = 0
for text in specs:
    name, params = parse_family_spec(text)
    r = slocc_report(build_family(name, params))
    crit = family_criteria(name, params, tol=1e-8)
    flags = " ".join(f"{k}={v}" for k, v in crit.items())
    print(f"{text:<34} Delta!=0: {r.delta_nonzero!s:<5} |Delta|={r.delta_abs:.2e}  "
          f"H!=0: {r.h_nonzero!s:<5} {flags}")
