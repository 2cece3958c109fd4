"""Glue the boundary divisor and its complement into the compactified ring.

The kernel is computed as I_D cap (I_C + (1 - del^-1) I_D); the script
prints its rank, the additivity check and what happens at del = 1.
"""

from k0genus2.moduli import build_k0_complement, build_k0_delta1, build_k0_mbar2

d1 = build_k0_delta1()
co = build_k0_complement()
mb = build_k0_mbar2(delta1=d1, complement=co)
print(f"kernel: {len(mb.presentation.relations)} generators, rank {mb.report.rank_Q}, free {mb.report.free}")
print("additivity:", mb.checks["rank_additivity"])
print("at del = 1:")
for key in ("del_one_inside_complement", "complement_inside_del_one", "complement_liftable", "del_one_quotient"):
    print(f"  {key}: {mb.checks.get(key)}")
for m in mb.mismatches:
    print("MISMATCH:", m)
