"""
Lattice Heisenberg algebras
===========================

The same symmetric-algebra presentation paired through the integer form
k <v_i, v_j>: commutators are classical integers, and degenerate forms
still present the algebra while the Fock suites refuse.
"""

from heisdouble.double import smash_multiply, verify_vacuum
from heisdouble.instances import build_lattice, identity_form, rank_one_form, zero_form

# the identity form on Z^2: two independent classical Heisenberg algebras
inst = build_lattice(identity_form(2))
D = inst.double
print("instance:", inst.name, "perfect pairing:", D.perfect)

print("\ncommutators [p'_{n,i}, p_{m,j}] for the identity form:")
for (n, i, m, j) in ((2, 1, 2, 1), (2, 1, 2, 2), (3, 2, 3, 2), (1, 1, 2, 1)):
    x = D.generator_element("p'", (n, i))
    a = D.generator_element("p", (m, j))
    comm = smash_multiply(D, x, a) - smash_multiply(D, a, x)
    print("  n=%d i=%d m=%d j=%d : %s" % (n, i, m, j, D.element_str(comm)))

print("\nvacuum check:", verify_vacuum(D, 3).status)

# the rank-one form couples the two colors
rk1 = build_lattice(rank_one_form(2))
print("\nrank-one form perfect:", rk1.double.perfect)
x = rk1.double.generator_element("p'", (2, 1))
a = rk1.double.generator_element("p", (2, 2))
comm = smash_multiply(rk1.double, x, a) - smash_multiply(rk1.double, a, x)
print("cross-color commutator [p'_{2,1}, p_{2,2}]:", rk1.double.element_str(comm))

# the zero form: the algebra still exists, but it has no Fock theory
deg = build_lattice(zero_form(2))
print("\nzero form perfect:", deg.double.perfect)
x = deg.double.generator_element("p'", (2, 1))
a = deg.double.generator_element("p", (2, 1))
comm = smash_multiply(deg.double, x, a) - smash_multiply(deg.double, a, x)
print("all commutators vanish:", comm.is_zero)
try:
    verify_vacuum(deg.double, 2)
except ValueError as e:
    print("vacuum check refuses:", e)
