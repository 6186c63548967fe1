#!/usr/bin/env python3
"""Regenerate the shipped number-field fixtures.

Integral bases, discriminants, ramification shapes and valuations of the
different come from PARI/GP (via cypari2). Run from the repository root:

    pip install cypari2
    python3 fixtures/oracle/generate_fixtures.py fixtures/

Output is deterministic: the random search for extra totally real fields
uses a fixed seed and a fixed coefficient scan order.
"""

import json
import random
import os
import sys
from fractions import Fraction

import cypari2

pari = cypari2.Pari()
pari.allocatemem(512 * 10**6, silent=True)

# Named fields: (label, polynomial, galois tag or None).
NAMED = [
    ("zsqrt2", "x^2 - 2", "C2"),
    ("cubic-1425", "x^3 + x^2 - 8*x + 3", None),
    ("cubic-c3-49", "x^3 - x^2 - 2*x + 1", "C3"),
    ("cubic-c3-81", "x^3 - 3*x + 1", "C3"),
    ("quartic-1600", "x^4 - 2*x^3 - 5*x^2 + 6*x - 1", None),
    ("q-2688656", "x^4 - 82*x^2 + 656", None),
    ("q-disc-eq", "x^4 - 2*x^3 - 19*x^2 + 20*x + 18", None),
    # The polynomial x^4 - 2x^3 - 5x^2 + 6x + 1 (constant term +1) defines a
    # different field, of discriminant 2^6 * 41; kept for comparison.
    ("quartic-2624", "x^4 - 2*x^3 - 5*x^2 + 6*x + 1", None),
    ("sextic-453789", "x^6 - x^5 - 6*x^4 + 6*x^3 + 8*x^2 - 8*x + 1", "C6"),
    # Not totally real: stored for the exact-arithmetic checks only.
    ("pure-cubic-2", "x^3 - 2", None),
    ("gaussian", "x^2 + 1", "C2"),
]

# A second defining polynomial for the field of discriminant 229
# (x^3 - 4x + 1), obtained by a Tschirnhaus substitution.
ISO_COPIES = [("cubic-229-alt", "cubic-fund-229", "x^2 + x - 3")]

EXTRA_WANTED = {3: 4, 4: 3, 5: 2, 6: 2}


def coeffs(poly):
    """Constant term first."""
    return [int(c) for c in reversed(pari.Vec(poly))]


def basis_rows(poly, nf):
    n = int(pari.poldegree(poly))
    rows = []
    for b in pari("(nf) -> nf.zk")(nf):
        vec = [Fraction(0)] * n
        for i in range(n):
            c = pari.polcoef(b, i)
            vec[i] = Fraction(int(pari.numerator(c)), int(pari.denominator(c)))
        rows.append([str(v) for v in vec])
    return rows


def ramification(nf, poly, disc):
    n = int(pari.poldegree(poly))
    primes = set(int(p) for p in pari.factor(abs(disc))[0])
    primes |= set(int(p) for p in pari.factor(n)[0])
    diff = pari("(nf) -> nf.diff")(nf)
    out = []
    for p in sorted(primes):
        shape = []
        vdiff = []
        for pr in pari.idealprimedec(nf, p):
            e = int(pari("(pr) -> pr.e")(pr))
            f = int(pari("(pr) -> pr.f")(pr))
            shape.append([e, f])
            vdiff.append(int(pari.idealval(nf, diff, pr)))
        out.append({"p": p, "shape": shape, "v_different": vdiff})
    return out


def record(label, poly_str, galois=None):
    poly = pari(poly_str)
    nf = pari.nfinit(poly)
    disc = int(pari("(nf) -> nf.disc")(nf))
    n = int(pari.poldegree(poly))
    rec = {
        "label": label,
        "poly": [str(c) for c in coeffs(poly)],
        "integral_basis": basis_rows(poly, nf),
        "disc": str(disc),
        "totally_real": int(pari.polsturm(poly)) == n,
        "iso_class": str(pari.polredabs(poly)),
        "ramification": ramification(nf, poly, disc),
    }
    if galois:
        rec["galois"] = galois
    return rec


def search_extra(taken_discs):
    """Characteristic polynomials of random symmetric integer matrices are
    totally real; keep irreducible ones with fundamental, pairwise distinct
    field discriminants. Fixed seed, so the output is reproducible."""
    rng = random.Random(20240521)
    found = []
    for n, want in EXTRA_WANTED.items():
        got = 0
        while got < want:
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = rng.randint(-2, 2)
            poly = pari.charpoly(pari.matrix(n, n, [v for row in m for v in row]))
            if not pari.polisirreducible(poly):
                continue
            d = int(pari.nfdisc(poly))
            if abs(d) > 10**7 or not int(pari.isfundamental(d)) or d in taken_discs:
                continue
            taken_discs.add(d)
            found.append(("tr%d-fund-%d" % (n, d), str(pari.polredabs(poly))))
            got += 1
    return found


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    records = [record(l, p, g) for (l, p, g) in NAMED]
    taken = set(int(r["disc"]) for r in records)
    records.append(record("cubic-fund-229", "x^3 - 4*x + 1"))
    taken.add(229)
    for label, poly in search_extra(taken):
        records.append(record(label, poly))
    for label, base, subst in ISO_COPIES:
        base_rec = next(r for r in records if r["label"] == base)
        base_poly = pari(" + ".join(
            "(%s)*x^%d" % (c, i) for i, c in enumerate(base_rec["poly"])))
        # characteristic polynomial of subst(x) modulo the base polynomial
        alt = pari.charpoly(pari.Mod(pari(subst), base_poly))
        rec = record(label, str(alt))
        assert rec["iso_class"] == base_rec["iso_class"]
        records.append(rec)
    for rec in records:
        path = os.path.join(outdir, rec["label"] + ".json")
        with open(path, "w") as fh:
            json.dump(rec, fh, indent=2)
            fh.write("\n")
        print(rec["label"], rec["disc"], rec["totally_real"])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
