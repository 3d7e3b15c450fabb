import time

from pibase import ordinal
from pibase.canonical_phi import PhiSession, phi_check_condition2
from pibase.ordinal import CardinalLevel
from pibase.pairing import parse_pattern
from pibase.sigma_forms import delta_prime, gamma, sigma_nf

ALEPH_0 = CardinalLevel.aleph(0)

for text in ("w^2", "w1+w", "w1*2", "w2+w1*2+w"):
    d = ordinal.parse(text)
    print(text, "=", sigma_nf(ALEPH_0, d))
    print("    gamma =", gamma(ALEPH_0, d), " delta' =", delta_prime(ALEPH_0, d))

session = PhiSession(ALEPH_0)
d = ordinal.parse("w1+w*2")
pattern = parse_pattern("(w1+w,0);(w1+w+3,4)")
xi = session.phi_witness(d, pattern)
print(f"phi({xi}) = {session.phi_eval(xi)}")

time0 = time.time()
report = phi_check_condition2(ALEPH_0, ordinal.parse("w1+w"), samples=200, seed=1)
print(report.status, report.checked, "patterns checked")
print(time.time() - time0)
