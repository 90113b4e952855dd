"""Independent slow reference implementations used by the tests.

None of these share code with the library beyond plain data types.
"""

import itertools
from collections import Counter
from fractions import Fraction
from math import factorial


# -- series --------------------------------------------------------------------------

def poly_mul(a, b, n):
    """Product of dense coefficient lists, truncated at degree n."""
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j <= n:
                out[i + j] += x * y
    return out


def poly_compose(outer, inner, n):
    """outer(inner(g)) by expanding every power of inner, truncated at n."""
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for c in outer:
        for k in range(n + 1):
            out[k] += c * power[k]
        power = poly_mul(power, inner, n)
    return out


def reversion(a, n):
    """Compositional inverse of g + a2 g^2 + ... by solving order by order."""
    b = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1)
    for k in range(2, n + 1):
        b[k] = -poly_compose(a, b, n)[k]
    return b


# -- graphs --------------------------------------------------------------------------

def _relabelings(n_vertices, edges, ext):
    out = set()
    for perm in itertools.permutations(range(n_vertices)):
        e = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        out.add((e, tuple(perm[x] for x in ext)))
    return out


def _realizing_matchings(n_vertices, edges, ext):
    """Number of perfect matchings of half-edges realizing one labeled graph.

    Half-edges: 3 per vertex plus one per external point.  Enumerated with
    pruning on the remaining required vertex pairs.
    """
    need = Counter(tuple(sorted(e)) for e in edges)
    half = [("v", v, i) for v in range(n_vertices) for i in range(3)]
    half += [("x", j, 0) for j in range(len(ext))]
    ext_need = {j: ext[j] for j in range(len(ext))}

    def pair_ok(a, b):
        if a[0] == "x" and b[0] == "x":
            return None
        if a[0] == "x" or b[0] == "x":
            x, v = (a, b) if a[0] == "x" else (b, a)
            return ("ext", x[1]) if ext_need.get(x[1]) == v[1] else None
        key = tuple(sorted((a[1], b[1])))
        return key if a[1] != b[1] and need[key] > 0 else None

    def rec(free):
        if not free:
            return 1
        a = free[0]
        total = 0
        for i in range(1, len(free)):
            b = free[i]
            tag = pair_ok(a, b)
            if tag is None:
                continue
            if tag[0] == "ext":
                ext_need[tag[1]], saved = None, ext_need[tag[1]]
                total += rec(free[1:i] + free[i + 1:])
                ext_need[tag[1]] = saved
            else:
                need[tag] -= 1
                total += rec(free[1:i] + free[i + 1:])
                need[tag] += 1
        return total

    return rec(half)


def wick_symmetry_factor(n_vertices, edges, ext):
    """Weight of one topology among the contractions of
    <phi(x1)..phi(xE) (1/3! ∫phi^3)^V> / V!, summed over vertex labelings."""
    # relabeling vertices does not change the number of realizing matchings
    total = len(_relabelings(n_vertices, edges, ext)) * _realizing_matchings(
        n_vertices, edges, ext)
    return Fraction(total, factorial(3) ** n_vertices * factorial(n_vertices))


def wick_symmetry_factor_bruteforce(n_vertices, edges, ext):
    """Same quantity by enumerating every perfect matching of all half-edges."""
    targets = _relabelings(n_vertices, edges, ext)
    half = [("v", v) for v in range(n_vertices) for _ in range(3)]
    half += [("x", j) for j in range(len(ext))]
    count = 0

    def rec(free, es, xs):
        nonlocal count
        if not free:
            if any(u == v for u, v in es):
                return
            key = (tuple(sorted(tuple(sorted(e)) for e in es)),
                   tuple(xs[j] for j in range(len(ext))))
            if key in targets:
                count += 1
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            rest = free[1:i] + free[i + 1:]
            if a[0] == "x" and b[0] == "x":
                continue
            if a[0] == "x" or b[0] == "x":
                x, v = (a, b) if a[0] == "x" else (b, a)
                rec(rest, es, {**xs, x[1]: v[1]})
            else:
                rec(rest, es + [(a[1], b[1])], xs)

    rec(half, [], {})
    return Fraction(count, factorial(3) ** n_vertices * factorial(n_vertices))


def _one_pi(n_vertices, edges):
    def connected(es):
        adj = {v: set() for v in range(n_vertices)}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n_vertices

    if not connected(edges):
        return False
    return all(connected(edges[:i] + edges[i + 1:]) for i in range(len(edges)))


def naive_graph_classes(n_ext, loops):
    """All 1PI phi^3 graphs up to isomorphism, by exhaustive adjacency search.

    Returns a set of minimal encodings (over all vertex permutations).
    """
    n_vertices = 2 * loops - 2 + n_ext
    pairs = list(itertools.combinations(range(n_vertices), 2))
    classes = set()
    for ext in itertools.product(range(n_vertices), repeat=n_ext):
        residual = [3 - ext.count(v) for v in range(n_vertices)]
        if min(residual) < 0:
            continue

        def rec(i, res, chosen):
            if i == len(pairs):
                if any(res):
                    return
                edges = [p for p, m in chosen for _ in range(m)]
                if _one_pi(n_vertices, edges):
                    classes.add(min(_relabelings(n_vertices, edges, ext)))
                return
            u, v = pairs[i]
            for m in range(0, min(res[u], res[v]) + 1):
                res[u] -= m
                res[v] -= m
                rec(i + 1, res, chosen + [((u, v), m)] if m else chosen)
                res[u] += m
                res[v] += m

        rec(0, residual, [])
    return classes
