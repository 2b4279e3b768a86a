"""Normalizing a genus-one curve and reading off its coordinates.

Starting from a pair of branch points in the disc, this walks through the
Moebius map to Jacobi form, the (p, k, u~, v~) coordinates on the universal
cover, and the relabeling / inversion / deck symmetries.

Run:  python demos/jacobi_normalization.py
"""

from harmonictori import (
    BranchPair, build_frame, chi_negate, deck_lambda_tilde, forward_coords,
    inverse_coords, lambda_swap, S_value, T_tilde,
)

bp = BranchPair(0.35 + 0.25j, -0.3 + 0.4j)
print(f"branch pair: alpha = {bp.alpha}, beta = {bp.beta}")

fr = build_frame(bp)
print(f"\nJacobi frame: k = {fr.k:.12f}")
print(f"  mu  = {fr.mu:.12f}  (maps to 0)")
print(f"  nu  = {fr.nu:.12f}  (maps to infinity)")
print(f"  z0  = {fr.z0:.12f}  (image of the disc center, right half plane)")
print("  four branch points land on (1, -1, 1/k, -1/k):")
for point, target in ((bp.alpha, 1.0), (bp.alpha_mirror, -1.0),
                      (bp.beta, 1 / fr.k), (bp.beta_mirror, -1 / fr.k)):
    print(f"    f({point:.4f}) = {fr.f(point):.12f}   target {target:.6f}")

mp = forward_coords(bp)
print(f"\ncoordinates: p = {mp.p:.12f}, k = {mp.k:.12f}")
print(f"  u~ = {mp.u_tilde:.12f}  (u = tan(u~/2) = {mp.u:.6f})")
print(f"  v~ = {mp.v_tilde:.12f}  (v = tan(v~/2) = {mp.v:.6f})")
back = inverse_coords(mp)
print(f"  round trip error: {max(abs(back.alpha - bp.alpha), abs(back.beta - bp.beta)):.2e}")

print("\nsymmetries")
sw = lambda_swap(bp)
print(f"  relabeling keeps p: S = {S_value(bp):.10f} -> {S_value(sw):.10f}")
ch = chi_negate(bp)
print(f"  inversion flips p:  S -> {S_value(ch):.10f} = 1/S "
      f"(product {S_value(bp) * S_value(ch):.12f})")
fr_ch = build_frame(ch)
print(f"  and swaps the angles: (u, v) = ({fr.u:.6f}, {fr.v:.6f}) -> "
      f"({fr_ch.u:.6f}, {fr_ch.v:.6f})")

lam = deck_lambda_tilde(mp)
print("\ndeck transformation (half turn of the rescaled angles):")
print(f"  (u~, v~) = ({mp.u_tilde:.6f}, {mp.v_tilde:.6f}) -> "
      f"({lam.u_tilde:.6f}, {lam.v_tilde:.6f})")
print(f"  level function shifts by p - 1: "
      f"{T_tilde(lam) - T_tilde(mp):.12f} vs {mp.p - 1:.12f}")
down = inverse_coords(lam)
print(f"  downstairs it is the relabeling: ({down.alpha:.6f}, {down.beta:.6f})")
