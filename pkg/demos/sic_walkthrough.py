"""Step-by-step collision resolution on a tiny frame.

Builds a two-slot frame by hand: UE0 transmits in both slots, UE1 only in
slot 0. Slot 1 is a singleton, so UE0 decodes there first; its slot-1
contribution is then subtracted from slot 0, leaving a residual (the two
copies ride different configurations, so they differ), and UE1 must decode
against residual-plus-doubled-noise. With the numbers below the residual
power beats UE1's own, so the second decode fails at a 0 dB threshold:
imperfect cancellation is visible in the ledger.
"""

import numpy as np

from ris_ra import UplinkFrame, build_access_graph, linear_to_db, resolve

sigma2 = 1e-13
gamma_th = 1.0  # 0 dB

c00 = 2.0e-6 + 1.0e-6j   # UE0 in slot 0
c01 = 1.5e-6 - 0.5e-6j   # UE0 in slot 1
c10 = 1.0e-6 + 0.0e-6j   # UE1 in slot 0

frame = UplinkFrame(terms=[{0: c00, 1: c10}, {0: c01}], noise=np.full(2, sigma2), L=1)
selections = np.array([[True, True], [True, False]])
graph = build_access_graph(selections)

print("initial frame:")
for s, terms in enumerate(frame.terms):
    print(f"  slot {s}: " + ", ".join(f"UE{k}: {v:.2e}" for k, v in terms.items())
          + f"  (noise {frame.noise[s]:.1e})")

res = resolve(graph, frame, gamma_th)

print("\ndecode trace:")
for step in res.trace:
    print(f"  iter {step.iteration}: slot {step.slot}, UE{step.ue}, "
          f"SINR {linear_to_db(step.sinr):6.2f} dB -> {'ok' if step.success else 'fail'}")

print("\nfinal ledgers:")
for s, terms in enumerate(res.ledger):
    body = ", ".join(f"UE{k}: {v:.2e}" for k, v in terms.items()) or "(empty)"
    print(f"  slot {s}: {body}  (noise {res.noise[s]:.1e})")

residual = c00 - c01
assert res.ledger[0][0] == residual
assert res.noise[0] == 2 * sigma2
print(f"\nresolved {res.sa} UEs in order {res.decoded}")
print(f"slot-0 residual after subtraction: {residual:.2e} "
      f"(|residual|^2 = {abs(residual) ** 2:.2e})")
