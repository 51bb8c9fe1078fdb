"""Walk the sigma-ancestor tree of C3 x C3 up to class 3 and print its measures."""
from fractions import Fraction

from sigmagroups.explorer import build_tree, export_dot, label_of

tree = build_tree(3, 2, max_class=3)
print(len(tree.nodes), "nodes, complete:", tree.complete)

# class 2: three ancestors, the whole mass
for n in tree.children("R"):
    print(n.id, "order 3^%d" % n.order_exp, "Meas_2 =", n.meas_c, label_of(n) or "")

# G_1 has 11 children; the Schur+1 ones carry a stable measure
g1 = tree.nodes["R.2"]
for n in tree.children(g1.id):
    print("  ", n.id, n.ipad, "Meas_3 =", n.meas_c, "Meas =", n.meas, label_of(n) or "")
print("sum over G_1's children:", sum((n.meas_c for n in tree.children(g1.id)), Fraction(0)))

# recursion Meas_c(G) = Meas(G) + sum of children's Meas_{c+1}, on every expanded node
print("recursion failures:", tree.recursion_failures())

with open("tree_class3.dot", "w") as fh:
    fh.write(export_dot(tree))
print("wrote tree_class3.dot")
