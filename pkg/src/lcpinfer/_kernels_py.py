"""Pure Python kernels. Same contract as the compiled module in _speedups.pyx."""


def standard_permutation(codes):
    """Stable sort permutation: position i of the sorted sequence maps to the
    position of that occurrence in the input."""
    return sorted(range(len(codes)), key=codes.__getitem__)


def lcp_from_bwt(codes):
    """Adjacent LCP values of the sorted cyclic suffixes encoded by a BWT.

    ``codes`` is any integer sequence.  Returns a list of length n-1 where -1
    stands for a pair of identical suffixes.  The i-th sorted suffix is spelled
    by iterating the standard permutation from i, so no explicit string
    multiset is built.  Two suffixes that agree on clen(p)+clen(q) symbols are
    equal (both sequences are periodic with those periods).
    """
    n = len(codes)
    psi = sorted(range(n), key=codes.__getitem__)
    vhat = sorted(codes)
    clen = [0] * n
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        cyc = []
        x = s
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = psi[x]
        for y in cyc:
            clen[y] = len(cyc)
    out = []
    for i in range(1, n):
        p, q = i - 1, i
        bound = clen[p] + clen[q]
        t = 0
        while t < bound and vhat[p] == vhat[q]:
            p = psi[p]
            q = psi[q]
            t += 1
        out.append(-1 if t == bound else t)
    return out
