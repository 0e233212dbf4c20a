"""
Tour of the built-in cone catalog
=================================

Walks the five catalog entries, prints the structure constants and the
vectors derived from them, and checks the shift map is an involution.
"""

import numpy as np

from cone_gamma import (
    catalog,
    catalog_names,
    check_condition_41,
    derived_vectors,
    measure_exponents,
    tau,
    tau_star,
)

for name in catalog_names():
    ent = catalog(name)
    cone = ent.cone
    p, q, d = derived_vectors(cone)
    m, m_star = measure_exponents(cone)
    print(f"{name}: rank {cone.rank}, ambient dimension {cone.dim}")
    print(f"  n_kj       {dict(cone.n) or '(none: the orthant case)'}")
    print(f"  p, q       {list(p)}, {list(q)}")
    print(f"  d          {[str(v) for v in d]}")
    print(f"  measure    {[str(v) for v in m]} (dual {[str(v) for v in m_star]})")

    # the parity condition controls whether the phase matrix diagonalizes
    cond = check_condition_41(cone)
    print(f"  diagonalizable: {'yes, m = %d' % cond if cond is not None else 'no'}")

    # the dual shift map undoes the shift map
    rng = np.random.default_rng(0)
    s = rng.uniform(0.2, 0.8, cone.rank) + 1j * rng.uniform(-1, 1, cone.rank)
    s_back = tau_star(cone, tau(cone, s))
    print(f"  tau_star(tau(s)) drift: {np.max(np.abs(s_back - s)):.2e}")
    print()
