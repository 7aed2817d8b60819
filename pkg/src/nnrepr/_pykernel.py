"""Pure-Python twin of ``_kernel.scan_block`` on arbitrary-precision ints.

Used when the extension is missing, when ``NNREPR_BACKEND=python`` is set,
or when scaled distances would not fit the 128-bit budget.
"""

INT128_BUDGET_BITS = 126


def scan_block(M, D, is_pos, table, arity, start, low, out_idx, out_tie):
    m = len(M)
    k = start
    d2 = D * D
    dist = [sum((D * ((k >> (arity - 1 - j)) & 1) - M[i][j]) ** 2 for j in range(arity))
            for i in range(m)]
    delta = [[d2 - 2 * D * M[i][j] for i in range(m)] for j in range(arity)]
    pos = [i for i in range(m) if is_pos[i]]
    neg = [i for i in range(m) if not is_pos[i]]
    nfail = 0
    steps = 1 << low
    t = 0
    while True:
        want = table[k] != 0
        if pos and neg:
            bp = min([dist[i] for i in pos])
            bn = min([dist[i] for i in neg])
            if bp == bn:
                out_idx[nfail] = k
                out_tie[nfail] = 1
                nfail += 1
            elif (bp < bn) != want:
                out_idx[nfail] = k
                out_tie[nfail] = 0
                nfail += 1
        elif bool(pos) != want:
            out_idx[nfail] = k
            out_tie[nfail] = 0
            nfail += 1
        t += 1
        if t == steps:
            return nfail
        bit = (t & -t).bit_length() - 1
        row = delta[arity - 1 - bit]
        mask = 1 << bit
        if k & mask:
            dist = [d - e for d, e in zip(dist, row)]
        else:
            dist = [d + e for d, e in zip(dist, row)]
        k ^= mask
