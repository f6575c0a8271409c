#!/usr/bin/env python3
"""Independent brute-force reference for the library's counting surfaces.

Recomputes, from scratch and sharing no code with the C++ implementation,
the string counts, walk counts, facet counts and biclosed-set counts of the
bundled quivers.  The expected values frozen into the test suite were
produced both here and by the library before being pinned.

Usage: tools/oracle.py data/*.quiver
"""

import sys


def parse(path):
    vertices, arrows, relations = [], [], set()
    names = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].split()
            if not line:
                continue
            if line[0] == "vertices":
                vertices = line[1:]
            elif line[0] == "arrow":
                names[line[1]] = len(arrows)
                arrows.append((line[1], vertices.index(line[2]),
                               vertices.index(line[3])))
            elif line[0] == "relation":
                relations.add((names[line[1]], names[line[2]]))
    return len(vertices), arrows, relations


def lfrom(arrows, letter):
    a, s = letter
    return arrows[a][1] if s > 0 else arrows[a][2]


def lto(arrows, letter):
    a, s = letter
    return arrows[a][2] if s > 0 else arrows[a][1]


def ok_pair(arrows, relations, x, y):
    if lto(arrows, x) != lfrom(arrows, y):
        return False
    if x[1] > 0 and y[1] > 0:
        return (x[0], y[0]) not in relations
    if x[1] < 0 and y[1] < 0:
        return (y[0], x[0]) not in relations
    return x[0] != y[0]


def wto(arrows, word):
    base, letters = word
    return lto(arrows, letters[-1]) if letters else base


def invert(arrows, word):
    base, letters = word
    return (wto(arrows, word),
            tuple((a, -s) for a, s in reversed(letters)))


def canon(arrows, word):
    other = invert(arrows, word)
    return min(word, other, key=lambda w: (len(w[1]), w))


def all_strings(nv, arrows, relations, cap=200000):
    seen, out, queue = set(), set(), []
    for v in range(nv):
        seen.add((v, ()))
        out.add((v, ()))
        queue.append((v, ()))
    while queue:
        word = queue.pop()
        end = wto(arrows, word)
        for a in range(len(arrows)):
            for s in (1, -1):
                letter = (a, s)
                if lfrom(arrows, letter) != end:
                    continue
                if word[1] and not ok_pair(arrows, relations, word[1][-1],
                                           letter):
                    continue
                nxt = (word[0], word[1] + (letter,))
                if nxt in seen:
                    continue
                seen.add(nxt)
                out.add(canon(arrows, nxt))
                queue.append(nxt)
                if len(out) > cap:
                    raise RuntimeError("string cap exceeded")
    return sorted(out, key=lambda w: (len(w[1]), w))


def blossom(nv, arrows, relations):
    arrows2 = list(arrows)
    nv2 = nv
    for v in range(nv):
        n_in = sum(1 for _, _, t in arrows if t == v)
        n_out = sum(1 for _, s, _ in arrows if s == v)
        for _ in range(2 - n_in):
            arrows2.append(("+in", nv2, v))
            nv2 += 1
        for _ in range(2 - n_out):
            arrows2.append(("+out", v, nv2))
            nv2 += 1
    match = {}
    for v in range(nv):
        ins = [i for i, (_, _, t) in enumerate(arrows2) if t == v]
        outs = [i for i, (_, s, _) in enumerate(arrows2) if s == v]
        for a in ins:
            for c in outs:
                if a < len(arrows) and c < len(arrows) and (a, c) not in relations:
                    match[a] = c
        taken = set(match.values())
        for a in ins:
            if a in match:
                continue
            for c in outs:
                if c in taken:
                    continue
                if a < len(arrows) and c < len(arrows) and (a, c) in relations:
                    continue
                match[a] = c
                taken.add(c)
                break
    relations2 = set()
    for v in range(nv):
        ins = [i for i, (_, _, t) in enumerate(arrows2) if t == v]
        outs = [i for i, (_, s, _) in enumerate(arrows2) if s == v]
        for a in ins:
            for c in outs:
                if match[a] != c:
                    relations2.add((a, c))
    return nv2, arrows2, relations2, len(arrows)


def maximal_strings(nv, arrows, relations, cap=200000):
    words = all_strings(nv, arrows, relations, cap)
    maximal = []
    for word in words:
        extendable = False
        for a in range(len(arrows)):
            for s in (1, -1):
                letter = (a, s)
                for cand in (word, invert(arrows, word)):
                    if lfrom(arrows, letter) == wto(arrows, cand) and (
                            not cand[1] or ok_pair(arrows, relations,
                                                   cand[1][-1], letter)):
                        extendable = True
        if not extendable:
            maximal.append(word)
    return maximal


def vertex_at(arrows, word, i):
    return word[0] if i == 0 else lto(arrows, word[1][i - 1])


def face_factors(arrows, relations, word, kind):
    base, letters = word
    n = len(letters)
    out = set()
    for i in range(1, n):
        for j in range(i, n):
            left = letters[i - 1][1]
            right = letters[j][1]
            if kind == "top" and not (left < 0 and right > 0):
                continue
            if kind == "bottom" and not (left > 0 and right < 0):
                continue
            factor = (vertex_at(arrows, word, i), letters[i:j])
            out.add(canon(arrows, factor))
    return out


def bron_kerbosch(graph, r, p, x, out):
    if not p and not x:
        out.append(sorted(r))
        return
    pivot = max(p | x, key=lambda v: len(graph[v] & p))
    for v in sorted(p - graph[pivot]):
        bron_kerbosch(graph, r | {v}, p & graph[v], x & graph[v], out)
        p = p - {v}
        x = x | {v}


def facet_count(nv, arrows, relations):
    nv2, arrows2, relations2, _ = blossom(nv, arrows, relations)
    walks = maximal_strings(nv2, arrows2, relations2)
    tops = [face_factors(arrows2, relations2, w, "top") for w in walks]
    bottoms = [face_factors(arrows2, relations2, w, "bottom") for w in walks]
    ok = [i for i in range(len(walks)) if not (tops[i] & bottoms[i])]
    bend = [i for i in ok
            if len({s for _, s in walks[i][1]}) == 2]
    graph = {i: set() for i in bend}
    for i in bend:
        for j in bend:
            if i != j and not (tops[i] & bottoms[j]) and not (tops[j] & bottoms[i]):
                graph[i].add(j)
    cliques = []
    if bend:
        bron_kerbosch(graph, set(), set(bend), set(), cliques)
    else:
        cliques = [[]]
    return len(walks), len(ok), len(bend), len(cliques)


def biclosed_count(nv, arrows, relations, limit=22):
    words = all_strings(nv, arrows, relations)
    n = len(words)
    if n > limit:
        return None
    index = {w: i for i, w in enumerate(words)}
    table = [[0] * n for _ in range(n)]
    for i, wi in enumerate(words):
        for j, wj in enumerate(words):
            res = 0
            for left in (wi, invert(arrows, wi)):
                for right in (wj, invert(arrows, wj)):
                    for a in range(len(arrows)):
                        letter = (a, 1)
                        if lfrom(arrows, letter) != wto(arrows, left):
                            continue
                        if left[1] and not ok_pair(arrows, relations,
                                                   left[1][-1], letter):
                            continue
                        if lto(arrows, letter) != right[0]:
                            continue
                        if right[1] and not ok_pair(arrows, relations, letter,
                                                    right[1][0]):
                            continue
                        joined = (left[0], left[1] + (letter,) + right[1])
                        res |= 1 << index[canon(arrows, joined)]
            table[i][j] = res
    full = (1 << n) - 1
    count = 0
    for mask in range(1 << n):
        good = True
        for i in range(n):
            if not good:
                break
            if not (mask >> i) & 1:
                continue
            for j in range(n):
                if (mask >> j) & 1 and table[i][j] & ~mask:
                    good = False
                    break
        if not good:
            continue
        comp = full & ~mask
        for i in range(n):
            if not good:
                break
            if not (comp >> i) & 1:
                continue
            for j in range(n):
                if (comp >> j) & 1 and table[i][j] & ~comp:
                    good = False
                    break
        if good:
            count += 1
    return count


def main():
    sys.setrecursionlimit(100000)
    for path in sys.argv[1:]:
        nv, arrows, relations = parse(path)
        name = path.rsplit("/", 1)[-1]
        try:
            strings = len(all_strings(nv, arrows, relations, cap=5000))
        except RuntimeError:
            print(f"{name}: strings=infinite-or-large")
            continue
        walks, nonself, bend, facets = facet_count(nv, arrows, relations)
        biclosed = biclosed_count(nv, arrows, relations)
        print(f"{name}: strings={strings} walks={walks} "
              f"complex_vertices={nonself} bendings={bend} facets={facets} "
              f"biclosed={biclosed}")


if __name__ == "__main__":
    main()
