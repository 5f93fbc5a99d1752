#!/usr/bin/env python3
"""Regenerate the offline LMFDB-shaped fixtures from PARI/GP.

Newform data (Hecke fields, a_n in a power basis, Atkin-Lehner signs, trace
forms) is computed with PARI's modular forms package and written as API
response bodies under crates/lmfdb/fixtures/cache/, keyed exactly like the
Rust client's on-disk cache (SHA-256 of the canonical request line).

    pip install cypari
    python3 tools/gen_fixtures.py
"""
import hashlib
import json
import math
import os
import random
from fractions import Fraction

from cypari import pari

pari.allocatemem(2 * 10**9)

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "crates", "lmfdb", "fixtures", "cache")
LEVELS = [11, 35, 77, 143, 187, 1001, 1463, 665, 805, 1085]
N_COEFFS = 100
CURVES = {
    "11a1": [0, -1, 1, -10, -20],
    "35a1": [0, 1, 1, 9, 1],
    "2351a1": [1, 0, 1, -5, -5],
    "25861i1": [1, 1, 1, -17, 30],
}


def canonical(path, params):
    query = "&".join(f"{k}={params[k]}" for k in sorted(params))
    return f"GET {path}?{query}"


def class_letters(n):
    # 0 -> a, 25 -> z, 26 -> ba, ...
    if n == 0:
        return "a"
    digits = []
    while n:
        digits.append(chr(ord("a") + n % 26))
        n //= 26
    return "".join(reversed(digits))


def frac(x):
    x = pari(x)
    return Fraction(int(pari.numerator(x)), int(pari.denominator(x)))


def power_coords(c, deg):
    """Coordinates of a PARI polmod (or rational) in the power basis 1, nu, ..."""
    c = pari(c)
    if str(pari.type(c)) == "t_POLMOD":
        c = pari.lift(c)
    out = []
    for j in range(deg):
        out.append(frac(pari.polcoef(c, j, "y")) if str(pari.type(c)) == "t_POL" else (frac(c) if j == 0 else Fraction(0)))
    return out


def odd_denominators(poly, coeffs):
    deg = int(pari.poldegree(poly))
    return all(x.denominator % 2 == 1 for c in coeffs[1:] for x in power_coords(c, deg))


IRREDUCIBLE_OVER_F2 = {1: 2, 2: 1, 3: 2, 4: 3, 5: 6, 6: 9, 7: 18, 8: 30}


def two_is_index_divisor(poly):
    """True when more primes above 2 share a residue degree than F_2 has irreducibles of that degree."""
    nf = pari.nfinit(poly)
    counts = {}
    for pr in pari.idealprimedec(nf, 2):
        f = int(pr[3])
        counts[f] = counts.get(f, 0) + 1
    return any(n > IRREDUCIBLE_OVER_F2.get(f, 1 << 30) for f, n in counts.items())


def two_integral_basis(poly, coeffs):
    """Re-express coefficients over a generator theta with Z_2[theta] 2-maximal.

    theta runs over small combinations of a 2-maximal order's basis and is
    accepted when v_2(disc charpoly(theta)) = v_2(disc K). Eigenvalues are
    algebraic integers, so their coordinates in 1, theta, ... then have odd
    denominators. If 2 is a common index divisor no such theta exists; the
    original basis is kept and the audit reports necessary-only.
    """
    if odd_denominators(poly, coeffs):
        return poly, coeffs
    deg = int(pari.poldegree(poly))
    if two_is_index_divisor(poly):
        return poly, coeffs
    target = int(pari.valuation(pari(f"nfdisc([{poly},[2]])"), 2))
    zk = [pari.Mod(b, poly) for b in pari(f"nfbasis([{poly},[2]])")]
    rng = random.Random(deg * 1000003 + int(pari.poldisc(poly)) % 1000003)
    for trial in range(4000):
        width = 1 + trial // 500
        c = [rng.randint(-width, width) for _ in range(deg)]
        theta = sum(ci * b for ci, b in zip(c, zk))
        mp = pari.charpoly(theta, "t")
        d = pari.poldisc(mp)
        if d == 0 or int(pari.valuation(d, 2)) != target:
            continue
        # coordinates of every coefficient in the basis 1, theta, ..., theta^(deg-1)
        powers = [power_coords(theta ** j, deg) for j in range(deg)]
        m = pari.matrix(deg, deg, [pari(str(powers[j][i])) for i in range(deg) for j in range(deg)])
        minv = pari.matsolve(m, pari.matid(deg))
        newpoly = pari.subst(mp, "t", "y")
        new = []
        for x in coeffs:
            col = pari.Col([pari(str(v)) for v in power_coords(x, deg)])
            v = minv * col
            new.append(pari.Mod(sum(v[i] * pari(f"y^{i}") for i in range(deg)), newpoly))
        if odd_denominators(newpoly, new):
            return newpoly, new
    return poly, coeffs


def primes_dividing_once(n):
    fa = pari.factor(n)
    return [int(fa[0][i]) for i in range(len(fa[0])) if int(fa[1][i]) == 1]


def level_forms(level):
    mf = pari(f"mfinit([{level},2],0)")
    basis = pari.mfeigenbasis(mf)
    fields = pari.mffields(mf)
    steinberg = primes_dividing_once(level)
    al = {p: pari.mfatkineigenvalues(mf, p) for p in steinberg}
    forms = []
    for i in range(len(basis)):
        poly = fields[i]
        deg = int(pari.poldegree(poly))
        if deg == 1:
            poly = pari("y")
        coeffs = pari.mfcoefs(basis[i], N_COEFFS)
        if deg > 1:
            # switch to the reduced defining polynomial; the old generator maps to Mod(a, red)
            red, img = pari.polredabs(poly, 1)
            coeffs = [pari.Mod(pari.subst(pari.lift(c) if str(pari.type(c)) == "t_POLMOD" else c, "y", pari.lift(img)), red) for c in coeffs]
            poly = red
            poly, coeffs = two_integral_basis(poly, coeffs)
        an = [power_coords(coeffs[n], deg) for n in range(1, N_COEFFS + 1)]
        traces = [int(frac(pari.trace(coeffs[n]) if deg > 1 else coeffs[n])) for n in range(1, N_COEFFS + 1)]
        dens = [1] * deg
        for v in an:
            for j, x in enumerate(v):
                dens[j] = dens[j] * x.denominator // math.gcd(dens[j], x.denominator)
        dens = [int(d) for d in dens]
        an_int = [[int(x * dens[j]) for j, x in enumerate(v)] for v in an]
        signs = []
        for p in steinberg:
            ev = al[p][i]
            # a rational Atkin-Lehner eigenvalue is constant across embeddings
            w = int(ev[0]) if str(pari.type(ev)) == "t_VEC" else int(ev)
            signs.append([p, w])
        forms.append({
            "dim": deg,
            "field_poly": [int(pari.polcoef(poly, j, "y")) for j in range(deg + 1)],
            "traces": traces,
            "an": an_int,
            "dens": dens,
            "atkin_lehner_eigenvals": signs,
        })
    forms.sort(key=lambda f: (f["dim"], f["traces"]))
    return forms


def write(path, params, body):
    key = canonical(path, params)
    digest = hashlib.sha256(key.encode()).hexdigest()
    with open(os.path.join(OUT, f"{digest}.json"), "w") as fh:
        json.dump(body, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
    return digest, key


def main():
    os.makedirs(OUT, exist_ok=True)
    index = {}
    for level in LEVELS:
        forms = level_forms(level)
        listing = []
        for idx, f in enumerate(forms):
            label = f"{level}.2.a.{class_letters(idx)}"
            listing.append({
                "label": label,
                "level": level,
                "weight": 2,
                "char_orbit_label": "a",
                "dim": f["dim"],
                "field_poly": f["field_poly"],
                "traces": f["traces"],
                "atkin_lehner_eigenvals": f["atkin_lehner_eigenvals"],
            })
            deg = f["dim"]
            numerators = [[1 if j == i else 0 for j in range(deg)] for i in range(deg)]
            params = {"_format": "json", "label": label}
            body = {"data": [{
                "label": label,
                "field_poly": f["field_poly"],
                "hecke_ring_power_basis": all(d == 1 for d in f["dens"]),
                "hecke_ring_numerators": numerators,
                "hecke_ring_denominators": f["dens"],
                "an": f["an"],
                "maxp": 97,
            }], "next": None}
            d, k = write("/api/mf_hecke_nf/", params, body)
            index[d] = k
        params = {"_format": "json", "char_order": "i1", "level": f"i{level}", "weight": "i2"}
        d, k = write("/api/mf_newforms/", params, {"data": listing, "next": None})
        index[d] = k
        print(level, [f["dim"] for f in forms])
    for label, ainvs in CURVES.items():
        E = pari(f"ellinit({ainvs})")
        conductor = int(pari.ellglobalred(E)[0])
        params = {"Clabel": label, "_format": "json"}
        body = {"data": [{"Clabel": label, "ainvs": ainvs, "conductor": conductor}], "next": None}
        d, k = write("/api/ec_curvedata/", params, body)
        index[d] = k
    with open(os.path.join(OUT, "index.json"), "w") as fh:
        json.dump(index, fh, sort_keys=True, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
