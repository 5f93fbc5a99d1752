"""Writes reference data for a set of curves using PARI/GP (via cypari).

Output: crates/core/tests/data/curves.json with conductor, local data at
bad primes and a_p for p < 1000 for each curve.
"""
import json
import os

from cypari import pari

CURVES = {
    "11a1": [0, -1, 1, -10, -20],
    "11a3": [0, -1, 1, 0, 0],
    "14a1": [1, 0, 1, 4, -6],
    "15a1": [1, 1, 1, -10, -10],
    "17a1": [1, -1, 1, -1, -14],
    "19a1": [0, 1, 1, -9, -15],
    "20a1": [0, 1, 0, 4, 4],
    "21a1": [1, 0, 0, -4, -1],
    "24a1": [0, -1, 0, -4, 4],
    "26a1": [1, 0, 1, -5, -8],
    "27a1": [0, 0, 1, 0, -7],
    "32a1": [0, 0, 0, 4, 0],
    "35a1": [0, 1, 1, 9, 1],
    "36a1": [0, 0, 0, 0, 1],
    "37a1": [0, 0, 1, -1, 0],
    "43a1": [0, 1, 1, 0, 0],
    "49a1": [1, -1, 0, -2, -1],
    "64a1": [0, 0, 0, -4, 0],
    "389a1": [0, 1, 1, -2, 0],
    "2351a1": [1, 0, 1, -5, -5],
    "5077a1": [0, 0, 1, -7, 6],
    "25861i1": [1, 1, 1, -17, 30],
    "nonmin5": [0, 0, 0, 0, 15625],
    "twist800": [0, 0, 0, -25, 0],
    "big": [0, 0, 0, -1242, 16848],
}

KODAIRA = {1: "I0", 2: "II", 3: "III", 4: "IV", -1: "I0*", -2: "II*", -3: "III*", -4: "IV*"}


def kodaira(k):
    k = int(k)
    if k in KODAIRA:
        return KODAIRA[k]
    if k > 4:
        return "I%d" % (k - 4)
    return "I%d*" % (-k - 4)


def main():
    out = []
    for label, a in CURVES.items():
        e = pari.ellinit(a)
        gr = pari.ellglobalred(e)
        N = int(gr[0])
        disc = int(e[11])
        fac = pari.factor(abs(disc))
        local = []
        for i in range(len(fac[0])):
            p = int(fac[0][i])
            loc = pari.elllocalred(e, p)
            f = int(loc[0])
            if f == 0 and int(pari.valuation(disc, p)) > 0 and N % p != 0:
                kind = "Good"
            elif f == 0:
                kind = "Good"
            elif f == 1:
                kind = "Multiplicative"
            else:
                kind = "Additive"
            local.append({"p": p, "f": f, "kodaira": kodaira(loc[1]), "tamagawa": int(loc[3]), "kind": kind})
        aps = {}
        for p in pari.primes(168):
            p = int(p)
            aps[str(p)] = int(pari.ellap(e, p))
        out.append({"label": label, "ainvs": a, "conductor": N, "discriminant": str(disc), "local": local, "ap": aps})
    path = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "tests", "data", "curves.json")
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)
    print("wrote", len(out), "curves")


if __name__ == "__main__":
    main()
