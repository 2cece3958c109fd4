"""Build the four rings that have direct presentations and print their shape."""

from k0genus2.moduli import build_k0_bg, build_k0_complement, build_k0_delta1, build_k0_m2

for build in (build_k0_m2, build_k0_bg, build_k0_delta1, build_k0_complement):
    ring = build()
    rep = ring.report
    rank = "infinite" if rep is None else rep.rank_Q
    free = "-" if rep is None else rep.free
    print(f"{ring.name:<11} rank {rank!s:>8}  free {free!s:<5}  {ring.seconds:6.2f} s")
    if rep is not None and rep.basis:
        print("  Z-basis:", ", ".join(rep.basis[:8]), "..." if len(rep.basis) > 8 else "")
    for d in ring.discrepancies:
        print("  note:", d)
    for m in ring.mismatches:
        print("  MISMATCH:", m)
