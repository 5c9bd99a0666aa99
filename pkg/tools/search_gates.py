"""Exhaustive search over 3x3 window operators for a gate contract.

Development tool (needs numba); the grids it finds are frozen into
src/structlogic/fixtures/grids and re-verified by the test suite with the
package's own tracer.

    python tools/search_gates.py OR
    python tools/search_gates.py COPY --clean
"""

import argparse
import itertools

import numpy as np
from numba import njit

TOKENS = ["0", "i", "1", "-1", "2", "-2"]
SIDES = ["north", "east", "south", "west"]
# heading: 0 N, 1 E, 2 S, 3 W
DR = np.array([-1, 0, 1, 0])
DC = np.array([0, 1, 0, -1])
FWD = np.array([3, 2, 1, 0])  # "\": N->W, E->S, S->E, W->N
REV = np.array([1, 0, 3, 2])  # "/": N->E, E->N, S->W, W->S


def chan(side, idx):
    return SIDES.index(side) * 3 + idx


@njit(cache=True)
def _trace(cells, couplers, entry, DR, DC, FWD, REV):
    seen = np.zeros(36, np.bool_)
    stack = np.empty(200, np.int64)
    top = 0
    exits = 0
    # entry state
    side, idx = entry // 3, entry % 3
    if side == 0:
        r, c, h = 0, idx, 2
    elif side == 1:
        r, c, h = idx, 2, 3
    elif side == 2:
        r, c, h = 2, idx, 0
    else:
        r, c, h = idx, 0, 1
    s = (r * 3 + c) * 4 + h
    seen[s] = True
    stack[top] = s
    top += 1
    outs = np.empty(2, np.int64)
    while top > 0:
        top -= 1
        s = stack[top]
        h = s % 4
        rc = s // 4
        r, c = rc // 3, rc % 3
        cell = cells[rc]
        n = 0
        if cell == 0:
            outs[0] = h
            n = 1
        elif cell == 2:
            outs[0] = FWD[h]
            n = 1
        elif cell == 3:
            outs[0] = REV[h]
            n = 1
        elif cell == 4:
            outs[0] = h
            outs[1] = FWD[h]
            n = 2
        elif cell == 5:
            outs[0] = h
            outs[1] = REV[h]
            n = 2
        for k in range(n):
            nh = outs[k]
            nr, nc = r + DR[nh], c + DC[nh]
            ch = -1
            if nr < 0:
                ch = c
            elif nr > 2:
                ch = 6 + c
            elif nc < 0:
                ch = 9 + r
            elif nc > 2:
                ch = 3 + r
            if ch >= 0:
                if couplers[ch] >= 0:
                    p = couplers[ch]
                    side, idx = p // 3, p % 3
                    if side == 0:
                        nr, nc, nh = 0, idx, 2
                    elif side == 1:
                        nr, nc, nh = idx, 2, 3
                    elif side == 2:
                        nr, nc, nh = 2, idx, 0
                    else:
                        nr, nc, nh = idx, 0, 1
                else:
                    exits |= 1 << ch
                    continue
            ns = (nr * 3 + nc) * 4 + nh
            if not seen[ns]:
                seen[ns] = True
                stack[top] = ns
                top += 1
    return exits


@njit(cache=True)
def _search(alphabet, cases, DR, DC, FWD, REV, limit):
    # cases rows: couplers[12], entry, must_mask, forbid_mask
    ncell = 9
    k = alphabet.shape[0]
    total = k ** ncell
    found = np.empty((limit, 9), np.int64)
    nfound = 0
    cells = np.empty(9, np.int64)
    for code in range(total):
        x = code
        for i in range(ncell):
            cells[i] = alphabet[x % k]
            x //= k
        ok = True
        for j in range(cases.shape[0]):
            ex = _trace(cells, cases[j, :12], cases[j, 12], DR, DC, FWD, REV)
            if (ex & cases[j, 13]) != cases[j, 13] or (ex & cases[j, 14]) != 0:
                ok = False
                break
        if ok:
            found[nfound] = cells
            nfound += 1
            if nfound == limit:
                break
    return found[:nfound]


# name -> (inputs {var: side}, outputs {name: (side, function)}, twisted output names)
CONTRACTS = {
    "AND": ({"a": "north", "b": "west"}, {"east1": ("east", lambda e: e["a"] & e["b"])}),
    "OR": ({"a": "north", "b": "west"}, {"east1": ("east", lambda e: e["a"] | e["b"])}),
    "CROS": ({"x": "north", "y": "west"}, {"east1": ("east", lambda e: e["x"]), "south1": ("south", lambda e: e["y"])}),
    "CNOT": ({"x": "north", "y": "west"}, {"east1": ("east", lambda e: 1 - e["x"]), "south1": ("south", lambda e: 1 - e["y"])}),
    "INVS": ({"x": "north", "y": "west"}, {"south1": ("south", lambda e: e["x"]), "east1": ("east", lambda e: e["y"])}),
    "COPY": ({"x": "west"}, {"east1": ("east", lambda e: e["x"]), "south1": ("south", lambda e: e["x"])}),
}


def build_cases(name, clean):
    inputs, outputs = CONTRACTS[name]
    port_chans = set()
    for side in list(inputs.values()) + [s for s, _ in outputs.values()]:
        port_chans |= {chan(side, i) for i in range(3)}
    rows = []
    names = sorted(inputs)
    for bits in itertools.product((0, 1), repeat=len(names)):
        env = dict(zip(names, bits))
        couplers = [-1] * 12
        for v, side in inputs.items():
            g, rail = chan(side, 1), chan(side, 0 if env[v] else 2)
            couplers[g], couplers[rail] = rail, g
        for oname, (side, fn) in outputs.items():
            want = chan(side, 0 if fn(env) else 2)
            other = chan(side, 2 if fn(env) else 0)
            forbid = 1 << other
            if clean:
                # every other port channel stays dark, except other outputs' channels for COPY
                allowed = {want} | set(range(12)) - port_chans
                if name == "COPY":
                    allowed |= {chan(s, i) for o, (s, _) in outputs.items() if o != oname for i in (0, 2)}
                for ch in range(12):
                    if ch not in allowed:
                        forbid |= 1 << ch
            rows.append(couplers + [chan(side, 1), 1 << want, forbid])
    return np.array(rows, np.int64)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("gate", choices=sorted(CONTRACTS))
    ap.add_argument("--clean", action="store_true", help="no light on foreign port channels")
    ap.add_argument("--alphabet", default="0,i,1,-1,2,-2")
    ap.add_argument("--limit", type=int, default=20)
    args = ap.parse_args()
    alphabet = np.array([TOKENS.index(t) for t in args.alphabet.split(",")], np.int64)
    cases = build_cases(args.gate, args.clean)
    found = _search(alphabet, cases, DR, DC, FWD, REV, args.limit)
    print(f"{len(found)} solutions (limit {args.limit})")
    for sol in found:
        print("---")
        for r in range(3):
            print(" ".join(TOKENS[v].rjust(2) for v in sol[r * 3:(r + 1) * 3]))


if __name__ == "__main__":
    main()
