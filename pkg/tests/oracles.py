"""Independent oracles used by the tests.

Nothing here goes through the engine's cached product path: the rewriter below
applies exactly one rule at a time to explicit atom lists, and the polynomial
helpers work on bare coefficient lists with their own arithmetic.  Agreement
between these and the package is the point of the tests.
"""

from __future__ import annotations


def naive_normalize(P, atoms):
    """One-rule-at-a-time rewriting of a single word.

    State: list of (coeff, [atom...]) with atoms ('v', i) / ('c', r).  At each
    step the first non-normal term is located and exactly one rewrite fires at
    its leftmost reducible position:

      leading scalar        absorb into the coefficient
      scalar, scalar        multiply
      var i, scalar r       sigma_i(r) var_i  [+ sibling term delta_i(r)]
      var j, var i (j > i)  c * var_i var_j [+ sibling lower terms]

    Terminates because every rule lowers (degree, out-of-order pairs).
    """
    R = P.ring
    work = [(R.one, list(atoms))]
    while True:
        idx = next((k for k, (_, w) in enumerate(work) if _reducible_at(w) is not None), None)
        if idx is None:
            break
        coeff, word = work.pop(idx)
        pos = _reducible_at(word)
        new_terms = _apply_one_rule(P, coeff, word, pos)
        # keep scan order stable: rewritten material goes back where it was
        work[idx:idx] = [t for t in new_terms if t[0] != R.zero]
    out = {}
    for coeff, word in work:
        mono = [0] * P.n
        for tag, val in word:
            assert tag == "v"
            mono[val] += 1
        key = tuple(mono)
        s = R.add(out.get(key, R.zero), coeff)
        if s == R.zero:
            out.pop(key, None)
        else:
            out[key] = s
    return out


def _reducible_at(word):
    if word and word[0][0] == "c":
        return 0
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if a[0] == "c" and b[0] == "c":
            return k
        if a[0] == "v" and b[0] == "c":
            return k
        if a[0] == "v" and b[0] == "v" and a[1] > b[1]:
            return k
    return None


def _apply_one_rule(P, coeff, word, pos):
    R = P.ring
    if pos == 0 and word[0][0] == "c":
        return [(R.mul(coeff, word[0][1]), word[1:])]
    a, b = word[pos], word[pos + 1]
    head, tail = word[:pos], word[pos + 2:]
    if a[0] == "c" and b[0] == "c":
        return [(coeff, head + [("c", R.mul(a[1], b[1]))] + tail)]
    if a[0] == "v" and b[0] == "c":
        i, r = a[1], b[1]
        out = [(coeff, head + [("c", P.sigma[i].apply(r)), a] + tail)]
        d = P.delta[i].apply(r)
        if d != R.zero:
            out.append((coeff, head + [("c", d)] + tail))
        return out
    j, i = a[1], b[1]
    cv = P.c[(i, j)]
    d0, dks = P.lower[(i, j)]
    out = [(coeff, head + [("c", cv), ("v", i), ("v", j)] + tail)]
    for k, dk in enumerate(dks):
        if dk != R.zero:
            out.append((coeff, head + [("c", dk), ("v", k)] + tail))
    if d0 != R.zero:
        out.append((coeff, head + [("c", d0)] + tail))
    return out


def random_word(P, rng, max_len=8):
    """Random mixed word of variables and nonzero scalars."""
    out = []
    for _ in range(rng.randint(0, max_len)):
        if rng.random() < 0.7:
            out.append(("v", rng.randrange(P.n)))
        else:
            out.append(("c", P.ring.random_nonzero(rng)))
    return out


# -- bare-list polynomial arithmetic over F_p ---------------------------------------


def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    return ptrim(out)


def pmod(a, b, p):
    a, b = ptrim(a), ptrim(b)
    assert b, "division by zero"
    inv = pow(b[-1], -1, p)
    a = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c == 0:
            continue
        q = c * inv % p
        for j, cb in enumerate(b):
            a[i + j] = (a[i + j] - q * cb) % p
    return ptrim(a)


def pgcd(a, b, p):
    a, b = ptrim(a), ptrim(b)
    while b:
        a, b = b, pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def ppow_mod(a, k, m, p):
    out = [1]
    for _ in range(k):
        out = pmod(pmul(out, a, p), m, p)
    return out


def same_radical(f, g, p):
    """rad<f> = rad<g> in F_p[t], by power divisibility alone.

    f | g^N exactly when every irreducible factor of f divides g (N at least
    deg f); symmetrically for g | f^N.  No factorization involved.
    """
    f, g = ptrim(f), ptrim(g)
    if not f or not g:
        return f == g
    if len(f) == 1 or len(g) == 1:
        return len(f) == 1 and len(g) == 1
    n = max(len(f), len(g))
    return ppow_mod(g, n, f, p) == [] and ppow_mod(f, n, g, p) == []


def pgcd_many(polys, p):
    g = []
    for a in polys:
        g = pgcd(g, a, p)
    return g
