#!/usr/bin/env python3
"""Generate the group fixture corpus under fixtures/.

Every fixture is a JSON file holding either a full multiplication table
(kind "table", identity at index 0) or a set of permutation generators
(kind "perm").  The script validates each table (Latin square, identity,
inverses, full associativity), audits expected structural invariants
(orders, abelianness, element-order histograms), and checks pairwise
non-isomorphism within every order class so the catalog really contains
the distinct groups it claims to.

Multiplication convention for permutations: (p * q)(x) = q(p(x)),
i.e. apply p first, then q.  Table fixtures built from permutation or
matrix models inherit element numbering with the identity first and the
remaining elements sorted by their model representation.
"""

import itertools
import json
import os
from collections import Counter
from math import gcd

from sympy.combinatorics.free_groups import free_group
from sympy.combinatorics.fp_groups import FpGroup, coset_enumeration_r

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXDIR = os.path.join(ROOT, "fixtures")


# --------------------------------------------------------------------------
# table builders
# --------------------------------------------------------------------------

def table_from_closure(gens, mul, ident):
    """Close `gens` under `mul`; return the multiplication table with the
    identity at index 0 and the rest sorted by model representation."""
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                p = mul(a, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    elems = sorted(seen)
    elems.remove(ident)
    elems.insert(0, ident)
    idx = {e: i for i, e in enumerate(elems)}
    return [[idx[mul(a, b)] for b in elems] for a in elems]


def cyclic(n):
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def direct(t1, t2):
    n1, n2 = len(t1), len(t2)
    table = []
    for i1 in range(n1):
        for i2 in range(n2):
            row = []
            for j1 in range(n1):
                for j2 in range(n2):
                    row.append(t1[i1][j1] * n2 + t2[i2][j2])
            table.append(row)
    return table


def direct_all(*tables):
    out = tables[0]
    for t in tables[1:]:
        out = direct(out, t)
    return out


def metacyclic(m, s, r, t):
    """<a,b | a^m = 1, b^s = a^t, b a b^-1 = a^r>, elements a^i b^j with
    index i*s + j.  Consistency of the presentation is asserted."""
    assert pow(r, s, m) == 1 % m, "conjugation order must divide s"
    assert (r * t - t) % m == 0, "a^t must be centralized by b"
    n = m * s

    def mul(e, f):
        i, j = divmod(e, s)
        k, l = divmod(f, s)
        ii = (i + k * pow(r, j, m)) % m
        jj = j + l
        if jj >= s:
            ii = (ii + t) % m
            jj -= s
        return ii * s + jj

    return [[mul(e, f) for f in range(n)] for e in range(n)]


def dihedral(order):
    assert order % 2 == 0 and order >= 4
    return metacyclic(order // 2, 2, order // 2 - 1, 0)


def dicyclic(order):
    assert order % 4 == 0
    m = order // 2
    return metacyclic(m, 2, m - 1, m // 2)


def c2c2_by_c4():
    """(C2 x C2) : C4 with the C4 generator swapping the two coordinates."""

    def swap(w):
        return ((w & 1) << 1) | (w >> 1)

    def mul(e, f):
        v, k = divmod(e, 4)
        w, l = divmod(f, 4)
        if k % 2:
            w = swap(w)
        return (v ^ w) * 4 + (k + l) % 4

    return [[mul(e, f) for f in range(16)] for e in range(16)]


def pauli16():
    """Closure of X, Z, iI inside 2x2 complex matrices (the one-qubit Pauli
    group); isomorphic to the central product of D8 and C4."""

    def cmul(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def cadd(x, y):
        return (x[0] + y[0], x[1] + y[1])

    def mmul(p, q):
        a, b, c, d = p
        e, f, g, h = q
        return (
            cadd(cmul(a, e), cmul(b, g)),
            cadd(cmul(a, f), cmul(b, h)),
            cadd(cmul(c, e), cmul(d, g)),
            cadd(cmul(c, f), cmul(d, h)),
        )

    one, zero, mone, im = (1, 0), (0, 0), (-1, 0), (0, 1)
    ident = (one, zero, zero, one)
    x = (zero, one, one, zero)
    z = (one, zero, zero, mone)
    i_ident = (im, zero, zero, im)
    return table_from_closure([x, z, i_ident], mmul, ident)


def heisenberg3():
    """Upper unitriangular 3x3 matrices over F3 (order 27, exponent 3)."""

    def mul(e, f):
        a, r = divmod(e, 9)
        b, c = divmod(r, 3)
        x, r = divmod(f, 9)
        y, z = divmod(r, 3)
        return ((a + x) % 3) * 9 + ((b + y) % 3) * 3 + (c + z + a * y) % 3

    return [[mul(e, f) for f in range(27)] for e in range(27)]


def quotient(table, kernel):
    """Quotient by a normal subgroup (given as a set of element ids)."""
    n = len(table)
    assert 0 in kernel
    coset_of = {}
    cosets = []
    for g in range(n):
        if g in coset_of:
            continue
        cs = frozenset(table[k][g] for k in kernel)
        ci = len(cosets)
        cosets.append(cs)
        for e in cs:
            coset_of[e] = ci
    reps = [min(cs) for cs in cosets]
    q = [[coset_of[table[reps[i]][reps[j]]] for j in range(len(cosets))]
         for i in range(len(cosets))]
    for i in range(len(cosets)):
        for j in range(len(cosets)):
            imgs = {coset_of[table[x][y]] for x in cosets[i] for y in cosets[j]}
            assert imgs == {q[i][j]}, "kernel is not normal"
    return q


def es32_plus():
    """Central product D8 o D8: extraspecial of order 32, plus type."""
    d8 = dihedral(8)
    z = None
    for g in range(1, 8):
        if d8[g][g] == 0 and all(d8[g][h] == d8[h][g] for h in range(8)):
            z = g
            break
    assert z is not None
    prod = direct(d8, d8)
    return quotient(prod, {0, z * 8 + z})


def table_from_presentation(names, relator_fn):
    """Multiplication table of a finite presentation via coset enumeration
    over the trivial subgroup (regular representation)."""
    ret = free_group(", ".join(names))
    gens = ret[1:]
    fp = FpGroup(ret[0], relator_fn(*gens))
    ct = coset_enumeration_r(fp, [])
    ct.compress()
    ct.standardize()
    tbl = ct.table
    n = len(tbl)
    word = {0: []}
    order = [0]
    qi = 0
    while qi < len(order):
        c = order[qi]
        qi += 1
        for a in range(len(ct.A)):
            d = tbl[c][a]
            if d not in word:
                word[d] = word[c] + [a]
                order.append(d)
    assert len(word) == n, "coset table is not transitive"
    def apply(c, w):
        for a in w:
            c = tbl[c][a]
        return c
    for j in range(n):
        assert apply(0, word[j]) == j
    return [[apply(i, word[j]) for j in range(n)] for i in range(n)]


def perm_table(gens):
    ident = tuple(range(len(gens[0])))

    def mul(p, q):
        return tuple(q[x] for x in p)

    return table_from_closure([tuple(g) for g in gens], mul, ident)


# --------------------------------------------------------------------------
# structural audits
# --------------------------------------------------------------------------

def check_group(table):
    n = len(table)
    rng = list(range(n))
    assert all(len(row) == n for row in table)
    for g in range(n):
        assert table[0][g] == g and table[g][0] == g, "identity must be 0"
        assert sorted(table[g]) == rng, "row is not a permutation"
        assert sorted(table[r][g] for r in range(n)) == rng, "column is not a permutation"
    inv = [None] * n
    for g in range(n):
        for h in range(n):
            if table[g][h] == 0:
                inv[g] = h
                break
        assert inv[g] is not None and table[inv[g]][g] == 0
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            ab = row_a[b]
            row_b = table[b]
            row_ab = table[ab]
            for c in range(n):
                assert row_ab[c] == row_a[row_b[c]], "associativity failure"
    return inv


def elem_order(table, g):
    o, x = 1, g
    while x != 0:
        x = table[x][g]
        o += 1
    return o


def order_hist(table):
    return tuple(sorted(Counter(elem_order(table, g) for g in range(len(table))).items()))


def is_abelian(table):
    n = len(table)
    return all(table[i][j] == table[j][i] for i in range(n) for j in range(i + 1, n))


def closure_set(table, base, extra):
    seen = set(base)
    seen.update(extra)
    frontier = list(seen)
    gens = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                for p in (table[a][g], table[g][a]):
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
        frontier = nxt
        gens = list(seen)
    return seen


def subgroup_gen(table, gens):
    return closure_set(table, {0}, gens)


def center_size(table):
    n = len(table)
    return sum(1 for z in range(n) if all(table[z][g] == table[g][z] for g in range(n)))


def derived_size(table, inv):
    n = len(table)
    comms = set()
    for a in range(n):
        for b in range(n):
            comms.add(table[table[inv[a]][inv[b]]][table[a][b]])
    return len(subgroup_gen(table, comms))


def invariant_key(table, inv):
    n = len(table)
    exps = 1
    for g in range(n):
        o = elem_order(table, g)
        exps = exps * o // gcd(exps, o)
    return (n, is_abelian(table), exps, order_hist(table),
            center_size(table), derived_size(table, inv))


def min_gen_set(table):
    n = len(table)
    if n == 1:
        return []
    seen = {frozenset([0])}
    level = [(frozenset([0]), [])]
    while level:
        nxt = []
        for sub, gens in level:
            for g in range(1, n):
                if g in sub:
                    continue
                fs = frozenset(closure_set(table, sub, [g]))
                if fs in seen:
                    continue
                seen.add(fs)
                if len(fs) == n:
                    return gens + [g]
                nxt.append((fs, gens + [g]))
        level = nxt
    raise AssertionError("unreachable")


def isomorphic(t1, t2):
    n = len(t1)
    if n != len(t2):
        return False
    inv1 = [next(h for h in range(n) if t1[g][h] == 0) for g in range(n)]
    inv2 = [next(h for h in range(n) if t2[g][h] == 0) for g in range(n)]
    if invariant_key(t1, inv1) != invariant_key(t2, inv2):
        return False
    if n == 1:
        return True
    gens = min_gen_set(t1)
    ords1 = {g: elem_order(t1, g) for g in gens}
    cands = [[h for h in range(1, n) if elem_order(t2, h) == ords1[g]] for g in gens]
    for images in itertools.product(*cands):
        phi = [None] * n
        phi[0] = 0
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, images):
                    xg = t1[x][g]
                    yh = t2[phi[x]][h]
                    if phi[xg] is None:
                        phi[xg] = yh
                        nxt.append(xg)
                    elif phi[xg] != yh:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if not ok or any(v is None for v in phi) or len(set(phi)) != n:
            continue
        if all(phi[t1[x][g]] == t2[phi[x]][h]
               for x in range(n) for g, h in zip(gens, images)):
            return True
    return False


# --------------------------------------------------------------------------
# emission
# --------------------------------------------------------------------------

WRITTEN = []


def emit_table(subdir, fname, name, table, provenance):
    inv = check_group(table)
    path = os.path.join(FIXDIR, subdir, fname + ".json")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    obj = {"name": name, "kind": "table", "table": table, "provenance": provenance}
    with open(path, "w") as fh:
        json.dump(obj, fh, separators=(",", ":"))
        fh.write("\n")
    WRITTEN.append(path)
    return inv


def emit_perm(subdir, fname, name, degree, gens, provenance, expect_order):
    for g in gens:
        assert sorted(g) == list(range(degree))
    assert len(perm_table(gens)) == expect_order
    path = os.path.join(FIXDIR, subdir, fname + ".json")
    os.makedirs(os.path.dirname(path), exist_ok=True)
    obj = {
        "name": name,
        "kind": "perm",
        "perm": {"degree": degree, "generators": [list(g) for g in gens]},
        "provenance": provenance,
    }
    with open(path, "w") as fh:
        json.dump(obj, fh, separators=(",", ":"))
        fh.write("\n")
    WRITTEN.append(path)


# --------------------------------------------------------------------------
# the catalog
# --------------------------------------------------------------------------

def build_order_le16():
    groups = {}

    def add(fname, name, table, prov):
        groups[fname] = (name, table, prov)

    for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16):
        add("c%d" % n, "C%d" % n, cyclic(n), "cyclic group of order %d" % n)
    add("c2xc2", "C2xC2", direct(cyclic(2), cyclic(2)), "direct product C2 x C2")
    add("s3", "S3", dihedral(6), "symmetric group on 3 letters (dihedral of order 6)")
    add("c4xc2", "C4xC2", direct(cyclic(4), cyclic(2)), "direct product C4 x C2")
    add("c2p3", "C2^3", direct_all(cyclic(2), cyclic(2), cyclic(2)),
        "elementary abelian group of order 8")
    add("dih8", "Dih8", dihedral(8), "dihedral group of order 8")
    add("q8", "Q8", dicyclic(8), "quaternion group of order 8")
    add("c3xc3", "C3xC3", direct(cyclic(3), cyclic(3)), "direct product C3 x C3")
    add("dih10", "Dih10", dihedral(10), "dihedral group of order 10")
    add("c6xc2", "C6xC2", direct(cyclic(6), cyclic(2)), "direct product C6 x C2")
    add("dih12", "Dih12", dihedral(12), "dihedral group of order 12")
    add("a4", "A4", perm_table([(1, 2, 0, 3), (1, 0, 3, 2)]),
        "alternating group on 4 letters, from permutation generators (0 1 2), (0 1)(2 3)")
    add("dic12", "Dic12", dicyclic(12), "dicyclic group of order 12")
    add("dih14", "Dih14", dihedral(14), "dihedral group of order 14")
    add("c4xc4", "C4xC4", direct(cyclic(4), cyclic(4)), "direct product C4 x C4")
    add("c8xc2", "C8xC2", direct(cyclic(8), cyclic(2)), "direct product C8 x C2")
    add("c4xc2p2", "C4xC2^2", direct_all(cyclic(4), cyclic(2), cyclic(2)),
        "direct product C4 x C2 x C2")
    add("c2p4", "C2^4", direct_all(cyclic(2), cyclic(2), cyclic(2), cyclic(2)),
        "elementary abelian group of order 16")
    add("c2c2_by_c4", "(C2xC2):C4", c2c2_by_c4(),
        "semidirect product (C2 x C2) : C4, generator of C4 swapping coordinates")
    add("c4_by_c4", "C4:C4", metacyclic(4, 4, 3, 0),
        "semidirect product C4 : C4 with inverting action")
    add("mod16", "Mod16", metacyclic(8, 2, 5, 0),
        "modular maximal-cyclic group of order 16 (a^8 = b^2 = 1, b a b = a^5)")
    add("dih16", "Dih16", dihedral(16), "dihedral group of order 16")
    add("sd16", "SD16", metacyclic(8, 2, 3, 0),
        "semidihedral group of order 16 (a^8 = b^2 = 1, b a b = a^3)")
    add("q16", "Q16", dicyclic(16), "generalized quaternion group of order 16")
    add("dih8xc2", "Dih8xC2", direct(dihedral(8), cyclic(2)), "direct product Dih8 x C2")
    add("q8xc2", "Q8xC2", direct(dicyclic(8), cyclic(2)), "direct product Q8 x C2")
    add("pauli16", "Pauli16", pauli16(),
        "one-qubit Pauli group: closure of X, Z, iI; central product of Dih8 and C4")
    return groups


def build_exceptions():
    groups = {}
    groups["q8"] = ("Q8", dicyclic(8), "quaternion group of order 8")
    groups["c4xc2"] = ("C4xC2", direct(cyclic(4), cyclic(2)), "direct product C4 x C2")
    groups["c4xc2p2"] = ("C4xC2^2", direct_all(cyclic(4), cyclic(2), cyclic(2)),
                         "direct product C4 x C2 x C2")
    groups["c4xc2p3"] = ("C4xC2^3", direct_all(cyclic(4), cyclic(2), cyclic(2), cyclic(2)),
                         "direct product C4 x C2 x C2 x C2")
    groups["c4xc2p4"] = ("C4xC2^4",
                         direct_all(cyclic(4), cyclic(2), cyclic(2), cyclic(2), cyclic(2)),
                         "direct product C4 x C2 x C2 x C2 x C2")
    groups["c3xc3"] = ("C3xC3", direct(cyclic(3), cyclic(3)), "direct product C3 x C3")
    groups["c3xc2p3"] = ("C3xC2^3", direct_all(cyclic(3), cyclic(2), cyclic(2), cyclic(2)),
                         "direct product C3 x C2 x C2 x C2")
    groups["ex16a"] = (
        "Ex16a",
        table_from_presentation(("x", "y"),
                                lambda x, y: [x**4, y**4, (x * y)**2, (x * y**-1)**2]),
        "coset enumeration of <x,y | x^4 = y^4 = (xy)^2 = (xy^-1)^2 = 1>; "
        "isomorphic to (C2xC2):C4")
    groups["ex16b"] = (
        "Ex16b",
        table_from_presentation(
            ("x", "y", "z"),
            lambda x, y, z: [x**4, y**4, z**4, (y * x)**2, (y * x**-1)**2,
                             (y * z)**2, (y * z**-1)**2,
                             x**2 * z**-2, z**-1 * x * z * x, x**2 * y**-2]),
        "coset enumeration of <x,y,z | x^4 = y^4 = z^4 = (yx)^2 = (yx^-1)^2 = "
        "(yz)^2 = (yz^-1)^2 = 1, x^2 = z^2, x^z = x^-1, x^2 = y^2>; "
        "isomorphic to the one-qubit Pauli group")
    groups["ex32"] = (
        "Ex32",
        table_from_presentation(
            ("x", "y", "z"),
            lambda x, y, z: [x**4, y**4, z**4, (x * y)**2, (x * y**-1)**2,
                             (x * z)**2, (x * z**-1)**2, (y * z)**2, (y * z**-1)**2,
                             x**2 * y**2 * z**2]),
        "coset enumeration of <x,y,z | x^4 = y^4 = z^4 = (xy)^2 = (xy^-1)^2 = "
        "(xz)^2 = (xz^-1)^2 = (yz)^2 = (yz^-1)^2 = x^2 y^2 z^2 = 1>")
    groups["es32p"] = ("ES32+", es32_plus(),
                       "central product Dih8 o Dih8 over the shared central involution; "
                       "extraspecial 2^(1+4), plus type")
    return groups


def build_odd_17_27():
    groups = {}
    for n in (17, 19, 21, 23, 25, 27):
        groups["c%d" % n] = ("C%d" % n, cyclic(n), "cyclic group of order %d" % n)
    groups["c7_by_c3"] = ("C7:C3", metacyclic(7, 3, 2, 0),
                          "Frobenius group C7 : C3 (a^7 = b^3 = 1, b a b^-1 = a^2)")
    groups["c5xc5"] = ("C5xC5", direct(cyclic(5), cyclic(5)), "direct product C5 x C5")
    groups["c9xc3"] = ("C9xC3", direct(cyclic(9), cyclic(3)), "direct product C9 x C3")
    groups["c3p3"] = ("C3^3", direct_all(cyclic(3), cyclic(3), cyclic(3)),
                      "elementary abelian group of order 27")
    groups["he27"] = ("He27", heisenberg3(),
                      "Heisenberg group: unitriangular 3x3 matrices over F3 (exponent 3)")
    groups["c9_by_c3"] = ("C9:C3", metacyclic(9, 3, 4, 0),
                          "semidirect product C9 : C3 (a^9 = b^3 = 1, b a b^-1 = a^4)")
    return groups


def main():
    audits = []

    # ---- order <= 16 catalog ----
    le16 = build_order_le16()
    assert len(le16) == 42
    by_order = {}
    for fname, (name, table, prov) in sorted(le16.items()):
        emit_table("order_le16", fname, name, table, prov)
        by_order.setdefault(len(table), []).append((fname, table))
    counts = {n: len(v) for n, v in sorted(by_order.items())}
    expected = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}
    assert counts == expected, counts
    for n, members in sorted(by_order.items()):
        for (f1, t1), (f2, t2) in itertools.combinations(members, 2):
            assert not isomorphic(t1, t2), (f1, f2)
    audits.append("order<=16: 42 groups, pairwise non-isomorphic within each order")

    q8 = le16["q8"][1]
    assert order_hist(q8) == ((1, 1), (2, 1), (4, 6))
    assert order_hist(le16["pauli16"][1]) == ((1, 1), (2, 7), (4, 8))
    assert order_hist(le16["c2c2_by_c4"][1]) == ((1, 1), (2, 7), (4, 8))
    audits.append("q8 has a unique involution; both presented order-16 models have 7")

    # ---- exception catalog ----
    exc = build_exceptions()
    assert len(exc) == 11
    tables = {}
    for fname, (name, table, prov) in exc.items():
        emit_table("exceptions", fname, name, table, prov)
        tables[fname] = table
    assert len(tables["ex16a"]) == 16 and len(tables["ex16b"]) == 16
    assert len(tables["ex32"]) == 32 and len(tables["es32p"]) == 32
    assert isomorphic(tables["ex16a"], le16["c2c2_by_c4"][1])
    assert isomorphic(tables["ex16b"], le16["pauli16"][1])
    assert not isomorphic(tables["ex16a"], tables["ex16b"])
    assert not isomorphic(tables["ex32"], tables["es32p"])
    assert not isomorphic(tables["ex32"], tables["c4xc2p3"])
    assert not isomorphic(tables["es32p"], tables["c4xc2p3"])
    es = tables["es32p"]
    inv_es = [next(h for h in range(32) if es[g][h] == 0) for g in range(32)]
    assert center_size(es) == 2 and derived_size(es, inv_es) == 2
    assert order_hist(es) == ((1, 1), (2, 19), (4, 12))
    for fname, table in tables.items():
        n = len(table)
        pairs = sum(1 for g in range(1, n) if elem_order(table, g) > 2) // 2
        if n <= 32:
            assert 3 ** pairs <= 10 ** 6, (fname, pairs)
    audits.append("exceptions: 11 groups; presented models match structural models; "
                  "all order<=32 members have a small oriented-set search space")

    # ---- odd orders 17..27 ----
    odd = build_odd_17_27()
    assert len(odd) == 12
    for fname, (name, table, prov) in sorted(odd.items()):
        emit_table("odd_le27", fname, name, table, prov)
    he = odd["he27"][1]
    assert not is_abelian(he) and order_hist(he) == ((1, 1), (3, 26))
    c93 = odd["c9_by_c3"][1]
    assert not is_abelian(c93) and max(o for o, _ in order_hist(c93)) == 9
    assert not is_abelian(odd["c7_by_c3"][1])
    audits.append("odd 17..27: 12 groups (with order<=16 this completes all odd orders <= 27)")

    # ---- non-solvable permutation fixtures ----
    emit_perm("nonsolvable", "alt5", "Alt5", 5,
              [(1, 2, 3, 4, 0), (1, 0, 2, 4, 3)],
              "alternating group on 5 letters: (0 1 2 3 4), (0 1)(3 4)", 60)
    emit_perm("nonsolvable", "sym5", "Sym5", 5,
              [(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)],
              "symmetric group on 5 letters: (0 1 2 3 4), (0 1)", 120)
    vecs = [(x, y) for x in range(5) for y in range(5) if (x, y) != (0, 0)]
    vidx = {v: i for i, v in enumerate(vecs)}

    def act(m):
        return tuple(vidx[((m[0][0] * v[0] + m[0][1] * v[1]) % 5,
                           (m[1][0] * v[0] + m[1][1] * v[1]) % 5)] for v in vecs)

    sl_gens = [act([[1, 1], [0, 1]]), act([[0, -1], [1, 0]])]
    sl_table = perm_table(sl_gens)
    assert order_hist(sl_table)[1] == (2, 1), "SL(2,5) must have a unique involution"
    emit_perm("nonsolvable", "sl2_5", "SL(2,5)", 24, sl_gens,
              "SL(2,5) acting on the 24 nonzero vectors of F5^2, "
              "generators [[1,1],[0,1]] and [[0,-1],[1,0]]", 120)
    emit_perm("nonsolvable", "alt6", "Alt6", 6,
              [(1, 2, 3, 4, 0, 5), (0, 1, 2, 4, 5, 3)],
              "alternating group on 6 letters: (0 1 2 3 4), (3 4 5)", 360)
    audits.append("nonsolvable: alt5/sym5/sl2_5/alt6 with orders 60/120/120/360")

    # ---- extras ----
    emit_table("other", "c8xc2xc2", "C8xC2^2",
               direct_all(cyclic(8), cyclic(2), cyclic(2)),
               "direct product C8 x C2 x C2")
    emit_perm("other", "sym4", "Sym4", 4,
              [(1, 2, 3, 0), (1, 0, 2, 3)],
              "symmetric group on 4 letters: (0 1 2 3), (0 1)", 24)
    audits.append("other: c8xc2xc2 (order 32) and sym4 (permutation ingest exercise)")

    print("wrote %d fixture files under %s" % (len(WRITTEN), FIXDIR))
    for line in audits:
        print("  [ok]", line)


if __name__ == "__main__":
    main()
