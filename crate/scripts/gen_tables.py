"""Write Cayley tables for the groups of order <= 16 that the spec grammar
cannot build. Element 0 is the identity; the rest follow in order of
discovery from the generators."""

import itertools
import pathlib
import sys


def closure(gens, mul, identity):
    elems = [identity]
    seen = {identity}
    i = 0
    while i < len(elems):
        for g in gens:
            x = mul(elems[i], g)
            if x not in seen:
                seen.add(x)
                elems.append(x)
        i += 1
    return elems


def table(elems, mul):
    index = {x: i for i, x in enumerate(elems)}
    return [[index[mul(a, b)] for b in elems] for a in elems]


def dicyclic(n):
    m = 2 * n

    def mul(x, y):
        (k1, s1), (k2, s2) = x, y
        if s1 == 0:
            return ((k1 + k2) % m, s2)
        if s2 == 0:
            return ((k1 - k2) % m, 1)
        return ((k1 - k2 + n) % m, 0)

    return closure([(1, 0), (0, 1)], mul, (0, 0)), mul


def alternating4():
    def mul(p, q):
        return tuple(q[p[i]] for i in range(4))

    return closure([(1, 2, 0, 3), (1, 0, 3, 2)], mul, (0, 1, 2, 3)), mul


def direct(a, b):
    (ea, ma), (eb, mb) = a, b

    def mul(x, y):
        return (ma(x[0], y[0]), mb(x[1], y[1]))

    elems = [(x, y) for x in ea for y in eb]
    return elems, mul


def dihedral(n):
    def mul(x, y):
        (k1, s1), (k2, s2) = x, y
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    return closure([(1, 0), (0, 1)], mul, (0, 0)), mul


def cyclic(n):
    return list(range(n)), lambda x, y: (x + y) % n


def c4c2_by_c2():
    # (C4 x C2) x| C2 with the involution (i, j) -> (i, j + i)
    def act(s, v):
        i, j = v
        return (i, (j + s * i) % 2)

    def mul(x, y):
        (v, s), (w, t) = x, y
        w = act(s, w)
        return (((v[0] + w[0]) % 4, (v[1] + w[1]) % 2), (s + t) % 2)

    return closure([((1, 0), 0), ((0, 1), 0), ((0, 0), 1)], mul, ((0, 0), 0)), mul


def pauli():
    def mul(x, y):
        return tuple(
            sum(x[2 * r + k] * y[2 * k + c] for k in range(2)) for r in range(2) for c in range(2)
        )

    x = (0, 1, 1, 0)
    z = (1, 0, 0, -1)
    i = (1j, 0, 0, 1j)
    return closure([x, z, i], mul, (1, 0, 0, 1)), mul


def write(path, elems, mul):
    t = table(elems, mul)
    assert all(sorted(row) == list(range(len(t))) for row in t)
    lines = [str(len(t))] + [" ".join(map(str, row)) for row in t]
    path.write_text("\n".join(lines) + "\n")


def main(out):
    out = pathlib.Path(out)
    out.mkdir(parents=True, exist_ok=True)
    groups = {
        "q8": dicyclic(2),
        "a4": alternating4(),
        "q16": dicyclic(4),
        "c2_x_d8": direct(cyclic(2), dihedral(4)),
        "c2_x_q8": direct(cyclic(2), dicyclic(2)),
        "c4c2_by_c2": c4c2_by_c2(),
        "pauli": pauli(),
    }
    for name, (elems, mul) in groups.items():
        ident = next(e for e in elems if all(mul(e, x) == x for x in elems))
        elems = [ident] + [e for e in elems if e != ident]
        write(out / f"{name}.txt", elems, mul)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "catalogs/tables")
