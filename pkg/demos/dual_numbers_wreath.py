"""
The dual numbers k[x]/(x^2) wreathed with S_2 and S_3 over Q.

The dual numbers are cellular with two cells, top = span{1} and bot = span{x}.
Only top has a nonzero form, so a cell module of A wr S_n labels a simple module
exactly when its multipartition puts nothing on bot.

    python3 demos/dual_numbers_wreath.py
"""

from __future__ import annotations

from wreathcell.cellular import cell_form
from wreathcell.exactalg import QQ, rank
from wreathcell.builtins import dual_numbers, label_text
from wreathcell.wreath import build_wreath, cell_module_report, semisimplicity_report, simple_report


def show(n: int) -> None:
    W = build_wreath(dual_numbers(QQ), n)
    print(f"== {W!r}")
    print(f"layers (most dominant first): {list(W.layer_order)}")
    for nu in W.multipartitions:
        rep = cell_module_report(W, nu)
        g = cell_form(W.cellular, nu)
        print(f"  {label_text(nu):>14}  dim {rep.dim}  rank {rank(g)}  |R_mu| = {len(rep.gammas)}")
    simples = simple_report(W)
    print(f"simples: {[label_text(nu) for nu, _ in simples.computed]}")
    ss = semisimplicity_report(W, radical_oracle=True)
    print(f"semisimple: A {ss.base}, kS_{n} {ss.symmetric}, A wr S_{n} {ss.wreath}; "
          f"Jacobson radical dim {ss.radical_dim}")
    print()


if __name__ == "__main__":
    for n in (2, 3):
        show(n)
