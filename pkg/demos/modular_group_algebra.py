"""
kS_2 wr S_n in characteristics 0, 2 and 3.

Over Q every cell form is nondegenerate and the wreath product is semisimple.
Over F_3 the base kS_2 is still semisimple but kS_3 is not, so kS_2 wr S_3 is not
either; over F_2 the base itself already fails. The surviving labels are the
multipartitions with p-restricted components.

    python3 demos/modular_group_algebra.py
"""

from __future__ import annotations

from wreathcell.builtins import label_text, sym_group
from wreathcell.exactalg import Field
from wreathcell.wreath import build_wreath, delta_equals_simple, semisimplicity_report, simple_report

for n in (2, 3):
    for p in (0, 2, 3):
        W = build_wreath(sym_group(2, Field(p)), n)
        simples = simple_report(W)
        ss = semisimplicity_report(W, radical_oracle=True)
        labels = ", ".join(f"{label_text(nu)} (dim {d}{', Delta = L' if delta_equals_simple(W, nu) else ''})"
                           for nu, d in simples.computed)
        print(f"kS_2 wr S_{n} over {W.field}: {len(W.multipartitions)} cells, {simples.count} simple{'' if simples.count == 1 else 's'}")
        print(f"  {labels}")
        print(f"  semisimple (A, kS_{n}, wreath) = {ss.triple()}, radical dim {ss.radical_dim}")
