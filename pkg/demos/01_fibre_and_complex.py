# Special fibre of the blown-up product of two polygons, and the maps between its strata.

from pchcert.fibre import ProductFibre
from pchcert.chowcx import complex_maps, verify_complex

# A 5-gon times a 4-gon: 20 strict components, 20 exceptional quadrics.

fibre = ProductFibre(5, 4)
for key, val in fibre.summary().items():
    if key != "adjacency_sample":
        print(f"{key:>22}: {val}")

# Each double curve records its class on both sides.

d = fibre.double_curve(("h", 0, 0))
for comp, cls in d.classes.items():
    print(comp, cls)

# The composite i^*i_* . gamma vanishes with the default multiplicities (2 on the quadrics).

maps = complex_maps(fibre)
report = verify_complex(fibre, maps)
for check in report["checks"]:
    print(check["name"], "->", check["pass"], f"({check['detail']})")

# With every multiplicity set to 1 the same identity breaks, which is why the default is 2.

bad = verify_complex(ProductFibre(5, 4, "all-ones"))
print("all-ones profile passes:", bad["pass"])
