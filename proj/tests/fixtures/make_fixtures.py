#!/usr/bin/env python3
# Transcribes the worked tables and moment-graph figures into JSON fixtures.
import json
import os

OUT = os.path.dirname(os.path.abspath(__file__))


def F(p, m, h=0):
    return {"p": p, "m": m, "h": h}


def E(coeff=1, hpow=0, factors=()):
    e = {"coeff": coeff}
    if hpow:
        e["hpow"] = hpow
    if factors:
        e["factors"] = list(factors)
    return e


def write(name, obj):
    with open(os.path.join(OUT, name), "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------- table (*)
star_points = [
    [[1, 0, 0], [1, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [1, 0, 1], [0, 1, 0]],
    [[1, 0, 0], [0, 1, 1], [1, 0, 0]],
    [[0, 1, 0], [1, 0, 1], [1, 0, 0]],
    [[0, 0, 1], [1, 1, 0], [1, 0, 0]],
]
star_entries = [
    [E(factors=[F(1, 3), F(2, 3)]), 0, 0, 0, 0],
    [E(hpow=1, factors=[F(1, 3)]), E(factors=[F(1, 2), F(2, 3, 1)]), 0, 0, 0],
    [E(hpow=1, factors=[F(3, 2, 1)]), E(hpow=1, factors=[F(2, 3, 1)]),
     E(factors=[F(1, 3, 1), F(1, 2, 1)]), 0, 0],
    [E(hpow=2), E(hpow=1, factors=[F(2, 3, 1)]), E(hpow=1, factors=[F(1, 3, 1)]),
     E(factors=[F(2, 3), F(1, 2, 2)]), 0],
    [E(hpow=1, factors=[F(2, 3)]), 0, E(hpow=1, factors=[F(2, 1)]),
     E(hpow=1, factors=[F(1, 2, 2)]), E(factors=[F(1, 3, 2), F(2, 3, 1)])],
]
write("table_star.json",
      {"diagram": "/1\\1/2\\2\\2/", "points": star_points, "entries": star_entries})

# ------------------------------------------------- 10x10 table for /1/2/3/4/5\2\
labels = ["45", "35", "34", "25", "24", "23", "15", "14", "13", "12"]
pts = []
for lab in labels:
    k, l = int(lab[0]), int(lab[1])
    pts.append([[0, 1] if i in (k, l) else [1, 0] for i in range(1, 6)])


def u12(k):
    return F(1, 2, k)


def uh(k):  # u12^(k) * h
    return E(hpow=1, factors=[u12(k)])


def uu(k1, k2):
    return E(factors=[u12(k1), u12(k2)])


h2 = E(hpow=2)
h2x2 = E(coeff=2, hpow=2)
Z = 0
flag_entries = [
    [uu(-1, -2), Z, Z, Z, Z, Z, Z, Z, Z, Z],
    [uh(-1), uu(-1, -1), Z, Z, Z, Z, Z, Z, Z, Z],
    [uh(-1), uh(-1), uu(0, -1), Z, Z, Z, Z, Z, Z, Z],
    [uh(-1), uh(-1), Z, uu(0, -1), Z, Z, Z, Z, Z, Z],
    [uh(-1), h2, uh(0), uh(0), uu(0, 0), Z, Z, Z, Z, Z],
    [h2x2, uh(0), uh(0), uh(0), uh(0), uu(0, 1), Z, Z, Z, Z],
    [uh(-1), uh(-1), Z, uh(-1), Z, Z, uu(-1, 1), Z, Z, Z],
    [uh(-1), h2, uh(0), h2, uh(0), Z, uh(1), uu(0, 1), Z, Z],
    [h2x2, uh(0), uh(0), h2, h2, uh(1), uh(1), uh(1), uu(1, 1), Z],
    [h2x2, h2x2, h2x2, uh(1), uh(1), uh(1), uh(1), uh(1), uh(1), uu(1, 2)],
]
write("table_flag_dual.json",
      {"diagram": "/1/2/3/4/5\\2\\", "labels": labels, "points": pts,
       "entries": flag_entries})

# ----------------------------------------------------- 5x5 table for \1/2/2\2\1/
ex3_points = [
    [[1, 1, 0], [0, 0, 1], [1, 0, 1]],
    [[1, 0, 1], [1, 0, 0], [0, 1, 1]],
    [[1, 0, 1], [0, 1, 0], [1, 0, 1]],
    [[0, 1, 1], [1, 0, 0], [1, 0, 1]],
    [[1, 0, 1], [0, 0, 1], [1, 1, 0]],
]
ex3_entries = [
    [E(factors=[F(2, 3), F(1, 3, 2), F(2, 3, 1)]), 0, 0, 0, 0],
    [0, E(factors=[F(1, 3, 2), F(1, 2, 1), F(2, 3, 1)]), 0, 0, 0],
    [E(hpow=1, factors=[F(1, 3, 2), F(2, 3, 1)]),
     E(hpow=1, factors=[F(1, 3, 2), F(2, 3, 1)]),
     E(factors=[F(1, 2, 2), F(2, 3, 1), F(2, 3, 1)]), 0, 0],
    [E(hpow=1, factors=[F(3, 2, 1), F(2, 3, 1)]),
     E(hpow=1, factors=[F(1, 3, 2), F(2, 3, 1)]),
     E(hpow=1, factors=[F(2, 3, 1), F(2, 3, 1)]),
     E(factors=[F(1, 3, 3), F(1, 2, 3), F(2, 3, 1)]), 0],
    [E(hpow=1, factors=[F(1, 3, 2), F(2, 3, 1)]),
     E(hpow=1, factors=[F(2, 1), F(2, 3, 1)]),
     E(hpow=1, factors=[F(1, 2, 2), F(2, 3, 1)]), 0,
     E(factors=[F(1, 3, 3), F(2, 3, 1), F(2, 3, 2)])],
]
write("table_nonquiver.json",
      {"diagram": "\\1/2/2\\2\\1/", "points": ex3_points, "entries": ex3_entries})

# ------------------------------------------------------- (Ah) and (Bh) tables
ah_points = [
    [[1, 0, 0], [0, 1, 1]],
    [[0, 1, 0], [1, 0, 1]],
    [[0, 0, 1], [1, 1, 0]],
]
ah_entries = [
    [E(factors=[F(1, 2), F(1, 3)]), 0, 0],
    [E(hpow=1, factors=[F(1, 3)]), E(factors=[F(1, 2, 1), F(2, 3)]), 0],
    [E(hpow=1, factors=[F(2, 1, 1)]), E(hpow=1, factors=[F(1, 2, 1)]),
     E(factors=[F(2, 3, 1), F(1, 3, 1)])],
]
write("table_mirror_a.json",
      {"diagram": "/1\\1\\1\\1/", "points": ah_points, "entries": ah_entries})

bh_points = [
    [[0, 1], [1, 0], [1, 0]],
    [[1, 0], [0, 1], [1, 0]],
    [[1, 0], [1, 0], [0, 1]],
]
bh_entries = [
    [E(factors=[F(1, 2, 4)]), E(hpow=1), E(hpow=1)],
    [0, E(factors=[F(1, 2, 3)]), E(hpow=1)],
    [0, 0, E(factors=[F(1, 2, 2)])],
]
write("table_mirror_b.json",
      {"diagram": "\\1/1/1/1\\", "points": bh_points, "entries": bh_entries})

# ------------------------------------------------------------ moment graphs
def bct_json(rows):
    return {"rows": rows}


def edge(a, b, wa, wb):
    return {"a": a, "b": b,
            "wa": {"u": [wa[0], wa[1]], "h": wa[2]},
            "wb": {"u": [wb[0], wb[1]], "h": wb[2]}}


g_star = {
    "diagram": "/1\\1/2\\2\\2/",
    "vertices": [bct_json(p) for p in star_points],
    "edges": [
        edge(0, 1, (2, 3, 0), (3, 2, 0)),
        edge(0, 2, (1, 3, 0), (3, 1, 0)),
        edge(1, 2, (1, 2, 0), (2, 1, 0)),
        edge(2, 3, (1, 2, 1), (2, 1, -1)),
        edge(2, 4, (1, 3, 1), (3, 1, -1)),
        edge(3, 4, (2, 3, 0), (3, 2, 0)),
    ],
}
write("graph_star.json", g_star)

g_flag = {
    "diagram": "/1/2/3/4/5\\2\\",
    "vertices": [bct_json(p) for p in pts],
    "edges": [
        edge(0, 1, (1, 2, -2), (2, 1, 2)),
        edge(0, 5, (1, 2, -1), (2, 1, 1)),
        edge(1, 3, (1, 2, -1), (2, 1, 1)),
        edge(1, 2, (1, 2, -1), (2, 1, 1)),
        edge(1, 4, (1, 2, -1), (2, 1, 1)),
        edge(3, 6, (1, 2, 0), (2, 1, 0)),
        edge(3, 4, (1, 2, -1), (2, 1, 1)),
        edge(2, 4, (1, 2, -1), (2, 1, 1)),
        edge(2, 9, (1, 2, 0), (2, 1, 0)),
        edge(4, 5, (1, 2, 0), (2, 1, 0)),
        edge(4, 7, (1, 2, 0), (2, 1, 0)),
        edge(4, 8, (1, 2, 0), (2, 1, 0)),
        edge(5, 8, (1, 2, 0), (2, 1, 0)),
        edge(6, 7, (1, 2, -1), (2, 1, 1)),
        edge(7, 8, (1, 2, 0), (2, 1, 0)),
        edge(8, 9, (1, 2, 1), (2, 1, -1)),
    ],
}
write("graph_flag_dual.json", g_flag)

g_ma = {
    "diagram": "/1\\1\\1\\1/",
    "vertices": [bct_json(p) for p in ah_points],
    "edges": [
        edge(0, 1, (1, 2, 0), (2, 1, 0)),
        edge(1, 2, (2, 3, 0), (3, 2, 0)),
        edge(0, 2, (1, 3, 0), (3, 1, 0)),
    ],
}
write("graph_mirror_a.json", g_ma)

g_mb = {
    "diagram": "\\1/1/1/1\\",
    "vertices": [bct_json(p) for p in bh_points],
    "edges": [
        edge(2, 1, (1, 2, 2), (2, 1, -2)),
        edge(1, 0, (1, 2, 3), (2, 1, -3)),
    ],
}
write("graph_mirror_b.json", g_mb)

# ------------------------------------------------------------ elliptic tables
# variable layout for (Ae): [u1,u2,u3,v1,v2,h]; for (Be): [u1,u2,v1,v2,v3,h]
def TH(*exps):
    return {"exp": list(exps)}


def TP(*thetas):
    return {"sign": 1, "thetas": list(thetas)}


ae = {
    "u_count": 3,
    "v_count": 2,
    "labels": ["f1", "f2", "f3"],
    "entries": [
        [TP(TH(1, -1, 0, 0, 0, 0), TH(1, 0, -1, 0, 0, 0), TH(0, 0, 0, -1, 1, 4)), 0, 0],
        [TP(TH(0, 0, 0, 0, 0, 1), TH(1, 0, -1, 0, 0, 0), TH(-1, 1, 0, -1, 1, 3)),
         TP(TH(1, -1, 0, 0, 0, 1), TH(0, 1, -1, 0, 0, 0), TH(0, 0, 0, -1, 1, 3)), 0],
        [TP(TH(0, 0, 0, 0, 0, 1), TH(-1, 1, 0, 0, 0, 1), TH(-1, 0, 1, -1, 1, 2)),
         TP(TH(0, 0, 0, 0, 0, 1), TH(1, -1, 0, 0, 0, 1), TH(0, -1, 1, -1, 1, 2)),
         TP(TH(0, 1, -1, 0, 0, 1), TH(1, 0, -1, 0, 0, 1), TH(0, 0, 0, -1, 1, 2))],
    ],
}
write("elliptic_mirror_a.json", ae)

be = {
    "u_count": 2,
    "v_count": 3,
    "labels": ["f1p", "f2p", "f3p"],
    "entries": [
        [TP(TH(1, -1, 0, 0, 0, 4), TH(0, 0, -1, 1, 0, 0), TH(0, 0, -1, 0, 1, 0)),
         TP(TH(0, 0, 0, 0, 0, 1), TH(0, 0, -1, 0, 1, 0), TH(-1, 1, -1, 1, 0, -3)),
         TP(TH(0, 0, 0, 0, 0, 1), TH(0, 0, -1, 1, 0, -1), TH(-1, 1, -1, 0, 1, -2))],
        [0,
         TP(TH(1, -1, 0, 0, 0, 3), TH(0, 0, -1, 1, 0, 1), TH(0, 0, 0, -1, 1, 0)),
         TP(TH(0, 0, 0, 0, 0, 1), TH(0, 0, -1, 1, 0, 1), TH(-1, 1, 0, -1, 1, -2))],
        [0, 0,
         TP(TH(1, -1, 0, 0, 0, 2), TH(0, 0, 0, -1, 1, 1), TH(0, 0, -1, 0, 1, 1))],
    ],
}
write("elliptic_mirror_b.json", be)

print("fixtures written")
