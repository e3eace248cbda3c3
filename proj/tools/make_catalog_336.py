#!/usr/bin/env python3
"""Writes the order-336 candidate groups PGL(2,7), SL(2,7) and PSL(2,7) x C2
as a group catalogue on stdout."""

P = 7
INF = P  # the point at infinity on the projective line


def mobius(a, b, c, d):
    # x -> (a x + b) / (c x + d) on {0..6, inf}
    def img(x):
        if x == INF:
            return INF if c == 0 else a * pow(c, -1, P) % P
        num, den = (a * x + b) % P, (c * x + d) % P
        return INF if den == 0 else num * pow(den, -1, P) % P
    return [img(x) for x in range(P + 1)]


def linear(m):
    pts = [(x, y) for x in range(P) for y in range(P) if (x, y) != (0, 0)]
    index = {p: i for i, p in enumerate(pts)}
    (a, b), (c, d) = m
    return [index[((a * x + b * y) % P, (c * x + d * y) % P)] for x, y in pts]


def emit(name, degree, order, perms):
    print(f"GROUP {name} degree={degree} order={order}")
    for p in perms:
        print(" ".join(map(str, p)))
    print()


def main():
    print("# candidate groups of order 336")
    emit("PGL(2,7)", 8, 336, [mobius(1, 1, 0, 1), mobius(3, 0, 0, 1), mobius(0, P - 1, 1, 0)])
    emit("SL(2,7)", 48, 336, [linear(((1, 1), (0, 1))), linear(((0, P - 1), (1, 0)))])
    psl = [mobius(1, 1, 0, 1), mobius(2, 0, 0, 1), mobius(0, P - 1, 1, 0)]
    emit("PSL(2,7)xC2", 10, 336, [p + [8, 9] for p in psl] + [list(range(8)) + [9, 8]])


if __name__ == "__main__":
    main()
