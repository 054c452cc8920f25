# Collatz orbits, preperiods and the 1 -> 4 -> 2 cycle
#
# Every start value we can check lands on {1, 2, 4} and then cycles with
# period 3.  The orbit record keeps the trajectory up to that point so any
# later iterate is a lookup.

from collatz_cesaro import collatz_iter, iterate_via_orbit, orbit_until_cycle

rec = orbit_until_cycle(27)
print("start 27: preperiod", rec.preperiod_K, "max excursion", rec.max_excursion)
print("enters the cycle at", rec.prefix[-1], "-> rotation", rec.cycle)

# C^j(27) for j far past the preperiod, by lookup and by brute stepping
for j in (0, 50, 109, 110, 111, 1000):
    print(j, iterate_via_orbit(rec, j), collatz_iter(27, j))

# Longest preperiods below 1000
longest = sorted(range(1, 1000), key=lambda m: orbit_until_cycle(m).preperiod_K)[-5:]
for m in longest:
    print(m, orbit_until_cycle(m).preperiod_K)
