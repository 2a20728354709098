"""
Induced modules Theta^mu(X, Y) and how they realise the cell modules.

First the action of one pure element on one diagram, kept symbolic; then a
numerical Theta module for the dual numbers, its generator diagram, and the
identification Theta^mu(Delta^lambda, S^nu) = Delta^nu checked on every basis
element of A wr S_3.

    python3 demos/theta_modules.py
"""

from __future__ import annotations

from wreathcell.builtins import dual_numbers, label_text
from wreathcell.exactalg import QQ
from wreathcell.symgrp import Permutation
from wreathcell.wreath import (
    AlgebraModule,
    GroupModule,
    ThetaModule,
    build_wreath,
    cell_module_report,
    theta_action_symbolic,
    theta_cyclic_check,
    theta_generator,
)

P = Permutation.parse

mu = (3, 2, 3)
gamma, sigma = P("(1,3,8,7,4)(2,6)", 8), P("(1,2,3)(4,6,8,7,5)", 8)
xs = ["u3", "u6", "u8", "u1", "u5", "u2", "u4", "u7"]
new_x, new_y, zeta = theta_action_symbolic(mu, xs, ["y1", "y2", "y3"], gamma, sigma,
                                           [f"a{i}" for i in range(1, 9)])
print(f"mu = {mu}, gamma = {gamma}, sigma = {sigma}")
print("  x part: " + " (x) ".join(u + a for u, a in new_x))
print("  y part: " + " (x) ".join(f"{y}{'' if t.is_identity() else t}" for y, t in new_y))
print(f"  new coset representative: {zeta}")
print()

D = dual_numbers(QQ)
W = build_wreath(D, 3)
reg = AlgebraModule.regular(D)
t = ThetaModule(W.algebra, (2, 1), [reg, reg], [GroupModule.specht(QQ, (2,)), GroupModule.trivial(QQ, 1)])
one = [D.one.get(j, 0) for j in range(D.dim)]
x = [1 if j == D.index[("bot", "x", "x")] else 0 for j in range(D.dim)]
print(f"Theta^(2,1)(regular, regular; S^(2), trivial) has dim {t.dim}")
print(f"  generator from (1, 1) spans: {theta_cyclic_check(t, [one, one], [[1], [1]])}")
print(f"  generator from (x, 1) spans a submodule of dim {t.span_dim(theta_generator(t, [x, one], [[1], [1]]))}")
print()

for nu in W.multipartitions:
    rep = cell_module_report(W, nu)
    print(f"Delta^{label_text(nu):<5} = Theta^{rep.mu}: dim {rep.dims['theta']}, "
          f"{len(rep.checks)} checks passed")
