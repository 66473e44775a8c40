#!/usr/bin/env python3
"""Regenerates core/data/catalog.json.

Simple-group orders come from the standard order formulas (re-verified by the
C++ loader), outer automorphism group orders from the standard tables, and
generator lists are verified here by BFS closure before being written out.
"""

import json
import math
import os
import sys
from functools import reduce

LIMIT = 10**8
SECTION_BOUND = 3600


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_powers(lo, hi):
    """(q, p, f) with q = p^f in [lo, hi]."""
    out = []
    for p in range(2, hi + 1):
        if not is_prime(p):
            continue
        q, f = p, 1
        while q <= hi:
            if q >= lo:
                out.append((q, p, f))
            q *= p
            f += 1
    return sorted(out)


rows = []


def add_row(rid, kind, params, order, out, oracle, **extra):
    if order > LIMIT:
        return
    row = {"id": rid, "kind": kind, "params": list(params), "order": order,
           "out": out, "oracle": oracle}
    row.update(extra)
    rows.append(row)


# --- alternating -----------------------------------------------------------
for n in range(5, 13):
    order = math.factorial(n) // 2
    if order > LIMIT:
        break
    add_row(f"A{n}", "alternating", [n], order, 4 if n == 6 else 2,
            "order formula n!/2")

# --- PSL(2,q) --------------------------------------------------------------
# q = 4, 5 give A5 and q = 9 gives A6; those rows live under the alternating ids.
for q, p, f in prime_powers(7, 577):
    if q == 9:
        continue
    order = q * (q * q - 1) // math.gcd(2, q - 1)
    add_row(f"PSL(2,{q})", "psl", [2, q], order, math.gcd(2, q - 1) * f,
            "order formula q(q^2-1)/gcd(2,q-1)")

# --- PSL(n,q), n >= 3 ------------------------------------------------------
def psl_order(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        o *= q ** i - 1
    return o // math.gcd(n, q - 1)

# PSL(3,2) is PSL(2,7) and PSL(4,2) is A8; skip the aliases.
for q, p, f in prime_powers(3, 9):
    add_row(f"PSL(3,{q})", "psl", [3, q], psl_order(3, q),
            math.gcd(3, q - 1) * 2 * f, "order formula for PSL(3,q)")
add_row("PSL(4,3)", "psl", [4, 3], psl_order(4, 3), 4, "order formula for PSL(4,q)")
add_row("PSL(5,2)", "psl", [5, 2], psl_order(5, 2), 2, "order formula for PSL(5,q)")

# --- PSU(n,q) ---------------------------------------------------------------
def psu_order(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        o *= q ** i - (-1) ** i
    return o // math.gcd(n, q + 1)

for q, p, f in prime_powers(3, 11):
    add_row(f"PSU(3,{q})", "psu", [3, q], psu_order(3, q),
            math.gcd(3, q + 1) * 2 * f, "order formula for PSU(3,q)")
# PSU(4,2) is also known as PSp(4,3) (one group, one row).
add_row("PSU(4,2)", "psu", [4, 2], psu_order(4, 2), 2,
        "order formula for PSU(4,q); same group as PSp(4,3)")
add_row("PSU(4,3)", "psu", [4, 3], psu_order(4, 3), 8, "order formula for PSU(4,q)")
add_row("PSU(5,2)", "psu", [5, 2], psu_order(5, 2), 2, "order formula for PSU(5,q)")

# --- PSp(2m,q) ---------------------------------------------------------------
def psp_order(m2, q):
    m = m2 // 2
    o = q ** (m * m)
    for i in range(1, m + 1):
        o *= q ** (2 * i) - 1
    return o // math.gcd(2, q - 1)

# PSp(4,2)' is A6 and PSp(4,3) is PSU(4,2); both already present.
add_row("PSp(4,4)", "psp", [4, 4], psp_order(4, 4), 4,
        "order formula for PSp(4,q)")
add_row("PSp(4,5)", "psp", [4, 5], psp_order(4, 5), 2,
        "order formula for PSp(4,q)")
add_row("PSp(6,2)", "psp", [6, 2], psp_order(6, 2), 1,
        "order formula for PSp(6,q)")

# --- Suzuki, G2, Tits --------------------------------------------------------
for q, f in ((8, 3), (32, 5)):
    add_row(f"Sz({q})", "sz", [q], q * q * (q * q + 1) * (q - 1), f,
            "order formula q^2(q^2+1)(q-1)")
add_row("G2(3)", "g2", [3], 3 ** 6 * (3 ** 6 - 1) * (3 ** 2 - 1), 2,
        "order formula q^6(q^6-1)(q^2-1)")
add_row("2F4(2)'", "tits", [], 2 ** 11 * 3 ** 3 * 5 ** 2 * 13, 2,
        "order 2^11 3^3 5^2 13")

# --- sporadic ----------------------------------------------------------------
SPORADIC = [("M11", 7920, 1), ("M12", 95040, 2), ("J1", 175560, 1),
            ("M22", 443520, 2), ("J2", 604800, 2), ("M23", 10200960, 1),
            ("HS", 44352000, 2), ("J3", 50232960, 2)]
for name, order, out in SPORADIC:
    add_row(name, "sporadic", [], order, out, "standard table order")

# --- spectra for the order-20160 collision -----------------------------------
def a_n_spectrum(n):
    """Element orders of Alt(n) from even-parity cycle types."""
    orders = set()

    def partitions(rest, most):
        if rest == 0:
            yield []
            return
        for part in range(min(rest, most), 0, -1):
            for tail in partitions(rest - part, part):
                yield [part] + tail

    for parts in partitions(n, n):
        if (n - len(parts)) % 2 == 0:
            orders.add(reduce(math.lcm, parts, 1))
    return sorted(orders)


for row in rows:
    if row["id"] == "A8":
        row["spectrum"] = a_n_spectrum(8)
        row["spectrumOracle"] = "cycle-type enumeration"
    if row["id"] == "PSL(3,4)":
        # Distinguishes PSL(3,4) from A8: no element of order 6 or 15.
        row["spectrum"] = [1, 2, 3, 4, 5, 7]
        row["spectrumOracle"] = "standard spectrum table"

# --- section sets for |T| <= 3600 --------------------------------------------
# Simple sections (quotients of subgroups).  For PSL(2,q) these follow from
# the classical subgroup list (elementary-abelian-by-cyclic, dihedral, A4, S4,
# A5 when q = 0,+-1 mod 5, subfield groups); alternating groups from their
# standard subgroup data.
SECTIONS = {
    "A5": ["C2", "C3", "C5", "A5"],
    "PSL(2,7)": ["C2", "C3", "C7", "PSL(2,7)"],
    "A6": ["C2", "C3", "C5", "A5", "A6"],
    "PSL(2,8)": ["C2", "C3", "C7", "PSL(2,8)"],
    "PSL(2,11)": ["C2", "C3", "C5", "C11", "A5", "PSL(2,11)"],
    "PSL(2,13)": ["C2", "C3", "C7", "C13", "PSL(2,13)"],
    "PSL(2,17)": ["C2", "C3", "C17", "PSL(2,17)"],
    "A7": ["C2", "C3", "C5", "C7", "A5", "A6", "PSL(2,7)", "A7"],
    "PSL(2,19)": ["C2", "C3", "C5", "C19", "A5", "PSL(2,19)"],
}
covered = {row["id"] for row in rows if row["order"] <= SECTION_BOUND}
assert covered == set(SECTIONS), (covered, set(SECTIONS))
for row in rows:
    if row["id"] in SECTIONS:
        row["sections"] = SECTIONS[row["id"]]
        row["sectionsOracle"] = "subgroup lattice (classical subgroup lists)"

rows.sort(key=lambda r: (r["order"], r["id"]))
dup = {}
for row in rows:
    dup.setdefault(row["order"], []).append(row["id"])
collisions = {o: ids for o, ids in dup.items() if len(ids) > 1}
assert collisions == {20160: ["A8", "PSL(3,4)"]}, collisions

# --- explicit generator lists -------------------------------------------------
def perm_mul(a, b):
    """a then b."""
    return tuple(b[x] for x in a)


def closure_size(degree, gens, cap=2_000_000):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                p = perm_mul(e, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
        if len(seen) > cap:
            raise RuntimeError("closure cap hit")
    return len(seen)


def cycles_of(perm):
    n = len(perm)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s] or perm[s] == s:
            seen[s] = True
            continue
        cyc = [s]
        seen[s] = True
        t = perm[s]
        while t != s:
            cyc.append(t)
            seen[t] = True
            t = perm[t]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "()"


def sym_gens(n):
    tr = list(range(n)); tr[0], tr[1] = 1, 0
    cyc = list(range(1, n)) + [0]
    return [tuple(tr), tuple(cyc)]


def alt_gens(n):
    three = list(range(n)); three[0], three[1], three[2] = 1, 2, 0
    if n % 2 == 1:
        big = list(range(1, n)) + [0]
    else:
        big = [0] + list(range(2, n)) + [1]
    return [tuple(three), tuple(big)]


def mat_vec_f2(m, v):
    """3x3 bit matrix times bit-vector encoded as integer (bit i = coord i)."""
    out = 0
    for i in range(3):
        s = 0
        for j in range(3):
            s ^= m[i][j] & (v >> j)
        out |= (s & 1) << i
    return out


def gl32_perms():
    companion = ((0, 0, 1), (1, 0, 1), (0, 1, 0))  # multiplication by x mod x^3+x+1
    transvection = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    out = []
    for m in (companion, transvection):
        out.append(tuple(mat_vec_f2(m, v + 1) - 1 for v in range(7)))
    return out


def agl32_perms():
    lin = []
    for p in gl32_perms():
        lin.append(tuple([0] + [p[v - 1] + 1 for v in range(1, 8)]))
    shift = tuple(v ^ 1 for v in range(8))
    return [shift] + lin


def psl27_perms():
    # Projective line over F7: points 0..6, infinity = 7.
    plus = tuple([(x + 1) % 7 for x in range(7)] + [7])
    inv = [0] * 8
    inv[7] = 0
    inv[0] = 7
    for x in range(1, 7):
        inv[x] = (-pow(x, 5, 7)) % 7  # -1/x
    return [plus, tuple(inv)]


def sl25_perms():
    # Nonzero vectors of F5^2; (a,b) -> index 5a+b-1.
    def idx(a, b):
        return 5 * a + b - 1

    def act(m):
        img = [0] * 24
        for a in range(5):
            for b in range(5):
                if a == 0 and b == 0:
                    continue
                na = (m[0][0] * a + m[0][1] * b) % 5
                nb = (m[1][0] * a + m[1][1] * b) % 5
                img[idx(a, b)] = idx(na, nb)
        return tuple(img)

    return [act(((0, -1), (1, 0))), act(((1, 1), (0, 1)))]


groups = []


def add_group(gid, degree, gens, order, oracle):
    got = closure_size(degree, gens)
    assert got == order, (gid, got, order)
    groups.append({"id": gid, "degree": degree, "order": order,
                   "generators": [cycles_of(g) for g in gens],
                   "oracle": oracle})


for n in range(3, 9):
    add_group(f"S{n}", n, sym_gens(n), math.factorial(n),
              "transposition and n-cycle; order n!")
for n in range(4, 9):
    add_group(f"A{n}", n, alt_gens(n), math.factorial(n) // 2,
              "3-cycle and long cycle; order n!/2")
add_group("GL(3,2)", 7, gl32_perms(), 168,
          "companion matrix of x^3+x+1 and a transvection on nonzero vectors")
add_group("AGL(3,2)", 8, agl32_perms(), 1344,
          "translation by e1 plus GL(3,2) generators on affine points")
add_group("PSL(2,7)", 8, psl27_perms(), 168,
          "x+1 and -1/x on the projective line over F7")
add_group("SL(2,5)", 24, sl25_perms(), 120,
          "standard S and T matrices on nonzero vectors of F5^2")

payload = {
    "version": 1,
    "orderLimit": LIMIT,
    "sectionBound": SECTION_BOUND,
    "simples": rows,
    "groups": groups,
}

out_path = os.path.join(os.path.dirname(__file__), "..", "core", "data", "catalog.json")
os.makedirs(os.path.dirname(out_path), exist_ok=True)
with open(out_path, "w") as fh:
    json.dump(payload, fh, indent=1)
    fh.write("\n")
print(f"wrote {os.path.normpath(out_path)}: {len(rows)} simple rows, {len(groups)} groups",
      file=sys.stderr)
