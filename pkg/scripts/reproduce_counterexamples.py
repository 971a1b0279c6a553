#!/usr/bin/env python3
"""Re-run the two pinned fixtures that separate the condition families.

Prints each checker's verdict next to the expected one; exit code 0 iff both
fixtures reproduce exactly, including the first-witness location for the
held-input fixture.
"""

import sys

from bsig import check_fixture, counterexample, nidb_verify, summarize_report


def main() -> int:
    ok = True
    for cid in ("5.3", "5.4"):
        fx = counterexample(cid)
        print(f"== fixture {cid}: delays {fx.p.d_r_min},{fx.p.d_r_max},"
              f"{fx.p.d_f_min},{fx.p.d_f_max} ==")
        reports = check_fixture(fx)
        for cond in sorted(reports):
            rep = reports[cond]
            match = rep.verdict == fx.expected[cond]
            ok &= match
            tag = "" if match else "  <-- MISMATCH"
            print(f"expected {cond}: {fx.expected[cond]}{tag}")
            sys.stdout.write(summarize_report(rep))
        if cid == "5.3":
            witness = nidb_verify(fx.i, fx.o, fx.p, "a").violations[0].witness
            match = witness == fx.p.d_r_max
            ok &= match
            print(f"first witness {witness} == max rise delay: {'yes' if match else 'NO'}")
        print()
    print(f"reproduced: {'yes' if ok else 'NO'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
