"""Pure-Python thinness kernel; reference for the compiled version.

Inputs are in eighth-units; results are in sixteenth-units because the
maximum of the distance envelope can sit halfway between two eighth marks.
"""

UNIT = 8
_INF = 1 << 40


def pack_graph(dist, ends_a, ends_b):
    return (tuple(tuple(r) for r in dist), tuple(ends_a), tuple(ends_b))


def pack_path(segments):
    return tuple(segments)


def _segment_sup(dist, ea, eb, e, frm, to, others):
    a = ea[e]
    b = eb[e]
    loop = a == b
    ra = dist[a]
    rb = dist[b]
    da = _INF
    db = _INF
    spans = []
    for pe, pf, pt in others:
        if pf <= pt:
            plo, phi = pf, pt
        else:
            plo, phi = pt, pf
        if pe == e:
            spans.append((plo, phi))
            if loop:
                spans.append((plo - UNIT, phi - UNIT))
                spans.append((plo + UNIT, phi + UNIT))
            continue
        pa = ea[pe]
        pb = eb[pe]
        if pa == pb:
            near = plo if plo < UNIT - phi else UNIT - phi
            x = ra[pa] + near
            y = rb[pa] + near
        else:
            x = ra[pa] + plo
            y = ra[pb] + UNIT - phi
            if y < x:
                x = y
            y = rb[pa] + plo
            z = rb[pb] + UNIT - phi
            if z < y:
                y = z
        if x < da:
            da = x
        if y < db:
            db = y
    # F(t) = min(A + t, B - t, dist(t, spans)) on [lo, hi], doubled coordinates.
    if loop:
        db = da
    A2 = 2 * da
    B2 = 2 * (UNIT + db)
    if frm <= to:
        lo, hi = frm, to
    else:
        lo, hi = to, frm
    cands = {2 * lo, 2 * hi}
    if da < _INF:
        c = db + UNIT - da
        cands.add(c)
    spans.sort()
    prev_hi = None
    for u1, u2 in spans:
        cands.add(2 * u1)
        cands.add(2 * u2)
        if da < _INF:
            cands.add(u1 - da)
            cands.add(UNIT + db + u2)
        if prev_hi is not None and prev_hi < u1:
            cands.add(prev_hi + u1)
        if prev_hi is None or u2 > prev_hi:
            prev_hi = u2
    lo2, hi2 = 2 * lo, 2 * hi
    order = sorted(c for c in cands if lo2 <= c <= hi2)
    if frm > to:
        order.reverse()
    best = -1
    where = order[0]
    for c in order:
        v = A2 + c
        w = B2 - c
        if w < v:
            v = w
        for u1, u2 in spans:
            s1 = 2 * u1 - c
            s2 = c - 2 * u2
            d = s1 if s1 > s2 else s2
            if d < 0:
                d = 0
            if d < v:
                v = d
        if v > best:
            best = v
            where = c
    return best, where


def triangle_sup(gp, s0, s1, s2):
    """Exact thinness of a triangle given its three sides.

    Returns ``(value, side, segment, position)`` where value and position are
    in sixteenths; ``position`` is measured along the host edge of the
    maximising segment.  The first maximiser in traversal order wins.
    """
    dist, ea, eb = gp
    sides = (s0, s1, s2)
    best = -1
    where = (0, -1, 0)
    for i in range(3):
        side = sides[i]
        if not side:
            continue
        others = sides[(i + 1) % 3] + sides[(i + 2) % 3]
        for k, (e, frm, to) in enumerate(side):
            v, c = _segment_sup(dist, ea, eb, e, frm, to, others)
            if v > best:
                best = v
                where = (i, k, c)
    return (best,) + where
