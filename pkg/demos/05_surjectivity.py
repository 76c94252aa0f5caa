# Boundary certificate: three higher Chow elements whose boundaries span PCH^1.

from pchcert.boundary import complete_to_kernel, graph_cycle_template, surjectivity_certificate
from pchcert.fibre import ProductFibre
from pchcert.pch import pch_coords, pch_space

space = pch_space(ProductFibre(5, 5))

# The graph of h_2 passes through blown-up corners with unknown multiplicities.
# Completion fixes them by requiring the cycle to lie in Ker(i^*i_*).

template = graph_cycle_template(space.fibre, 2)
print(len(template.blocks), "blocks,", len(template.chain), "joining curves,",
      len(template.unknowns), "unknowns")
done = complete_to_kernel(space, template)
print("ambiguity", done.ambiguity, "- vanishes in PCH:", done.ambiguity_pch_zero)
print("graph coordinates", [str(x) for x in pch_coords(space, done.cycle)])

# Without the joining curves no completion exists.

try:
    complete_to_kernel(space, graph_cycle_template(space.fibre, 2, connect=False))
except ValueError as exc:
    print("unjoined template:", exc)

# The certificate itself.

for s in (0, 2):
    cert = surjectivity_certificate(5, 5, 2, s, space=space)
    print(f"s={s}", [[str(x) for x in row] for row in cert.matrix], "rank", cert.rank, "det", cert.det)
print(cert.to_json()["paper_comparisons"]["third_row"])
