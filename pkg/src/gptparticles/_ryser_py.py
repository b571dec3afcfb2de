"""Pure-Python Ryser permanent, used when the compiled kernel is unavailable."""


def ryser(a):
    """Permanent of a square matrix given as a 2-D array-like of complex numbers.

    Iterates column subsets in Gray-code order so each step adds or removes a
    single column from the running row sums (O(n) work per subset).
    """
    rows = [[complex(x) for x in row] for row in a]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1 + 0j
    cols = [[rows[i][j] for i in range(n)] for j in range(n)]
    rowsum = [0j] * n
    total = 0j
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        col = cols[j]
        if ((k ^ (k >> 1)) >> j) & 1:
            rowsum = [r + c for r, c in zip(rowsum, col)]
        else:
            rowsum = [r - c for r, c in zip(rowsum, col)]
        prod = rowsum[0]
        for r in rowsum[1:]:
            prod *= r
        if k & 1:
            total -= prod
        else:
            total += prod
    return -total if n & 1 else total
