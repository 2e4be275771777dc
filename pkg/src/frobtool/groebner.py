"""Buchberger's algorithm on raw term dictionaries.

Polynomials here are plain ``{exponent tuple: residue}`` dicts so that the
inner loops avoid object overhead; :mod:`frobtool.ideal` wraps the results.
Pairs are pruned with the Gebauer-Moeller update (product and chain
criteria) and selected by the normal strategy, smallest lcm first.
"""

from __future__ import annotations

import heapq


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


def _lead(f, key):
    return max(f, key=key)


def _sub_multiple(r, g, shift, c, p):
    """In place: r -= c * x^shift * g."""
    for m, v in g.items():
        nm = tuple(x + y for x, y in zip(m, shift))
        w = (r.get(nm, 0) - c * v) % p
        if w:
            r[nm] = w
        else:
            r.pop(nm, None)


def reduce_full(f, basis, leads, p, key):
    """Remainder of ``f`` on division by ``basis`` (monic, with given leads)."""
    work = dict(f)
    rem = {}
    while work:
        lm = max(work, key=key)
        c = work[lm]
        for g, lg in zip(basis, leads):
            if _divides(lg, lm):
                shift = tuple(x - y for x, y in zip(lm, lg))
                _sub_multiple(work, g, shift, c, p)
                break
        else:
            rem[lm] = work.pop(lm)
    return rem


def _make_monic(f, p, key):
    lm = _lead(f, key)
    inv = pow(f[lm], p - 2, p)
    if inv == 1:
        return f, lm
    return {m: (c * inv) % p for m, c in f.items()}, lm


def _spoly(f, lf, g, lg, p):
    l = _lcm(lf, lg)
    s = {}
    sf = tuple(x - y for x, y in zip(l, lf))
    sg = tuple(x - y for x, y in zip(l, lg))
    for m, c in f.items():
        s[tuple(x + y for x, y in zip(m, sf))] = c
    _sub_multiple(s, g, sg, 1, p)
    return s


def buchberger(polys, p, key):
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Returns a list of monic term dicts sorted by leading monomial, largest
    first. The unit ideal gives ``[{0: 1}]``, the zero ideal ``[]``.
    """
    polys = [dict(f) for f in polys if f]
    if not polys:
        return []
    n = len(next(iter(polys[0])))
    one = (0,) * n
    for f in polys:
        if len(f) == 1 and one in f:
            return [{one: 1}]

    basis = []   # every polynomial ever added
    leads = []
    active = []  # indices forming the current basis
    pairs = []   # heap of (key(lcm), tiebreak, i, j)
    counter = 0

    def update(h_idx):
        nonlocal counter, pairs, active
        lh = leads[h_idx]
        cand = [g for g in active]
        # chain criterion among the new pairs
        keep = []
        for idx, g in enumerate(cand):
            lg = leads[g]
            l = _lcm(lh, lg)
            if _coprime(lh, lg):
                keep.append((g, l, True))
                continue
            redundant = False
            for other in cand[idx + 1:]:
                if _divides(_lcm(lh, leads[other]), l):
                    redundant = True
                    break
            if not redundant:
                for g2, l2, _ in keep:
                    if _divides(l2, l):
                        redundant = True
                        break
            if not redundant:
                keep.append((g, l, False))
        new_pairs = [(g, l) for g, l, coprime in keep if not coprime]
        # prune old pairs whose lcm is strictly divisible via the new lead
        survivors = []
        for item in pairs:
            _, _, i, j = item
            l = _lcm(leads[i], leads[j])
            if (_divides(lh, l) and _lcm(leads[i], lh) != l and _lcm(lh, leads[j]) != l):
                continue
            survivors.append(item)
        pairs = survivors
        for g, l in new_pairs:
            counter += 1
            pairs.append((key(l), counter, g, h_idx))
        heapq.heapify(pairs)
        active = [g for g in active if not _divides(lh, leads[g])]
        active.append(h_idx)

    def active_view():
        return [basis[i] for i in active], [leads[i] for i in active]

    polys.sort(key=lambda f: key(_lead(f, key)))
    for f in polys:
        g_polys, g_leads = active_view()
        r = reduce_full(f, g_polys, g_leads, p, key)
        if not r:
            continue
        r, lr = _make_monic(r, p, key)
        if not any(lr):
            return [{one: 1}]
        basis.append(r)
        leads.append(lr)
        update(len(basis) - 1)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        s = _spoly(basis[i], leads[i], basis[j], leads[j], p)
        if not s:
            continue
        g_polys, g_leads = active_view()
        r = reduce_full(s, g_polys, g_leads, p, key)
        if not r:
            continue
        r, lr = _make_monic(r, p, key)
        if not any(lr):
            return [{one: 1}]
        basis.append(r)
        leads.append(lr)
        update(len(basis) - 1)

    return interreduce([basis[i] for i in active], p, key)


def interreduce(polys, p, key):
    """Minimal, fully reduced and monic form of a Groebner basis."""
    items = []
    for f in polys:
        if f:
            f, lf = _make_monic(f, p, key)
            items.append((lf, f))
    items.sort(key=lambda t: key(t[0]))
    minimal = []
    for lf, f in items:
        if not any(_divides(lg, lf) for lg, _ in minimal):
            minimal.append((lf, f))
    out = []
    for idx, (lf, f) in enumerate(minimal):
        others = [g for k, (_, g) in enumerate(minimal) if k != idx]
        other_leads = [lg for k, (lg, _) in enumerate(minimal) if k != idx]
        tail = dict(f)
        c = tail.pop(lf)
        tail = reduce_full(tail, others, other_leads, p, key)
        tail[lf] = c
        out.append((lf, tail))
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return [f for _, f in out]
