"""Pure-python sweep kernels; the reference semantics for the Cython twin.

Both backends must visit pixels in the same lexicographic order (rows
ascending, columns ascending within a row) and perform the same arithmetic,
so their iterates agree to rounding.

``im1``/``ip1``/``jm1``/``jp1`` are precomputed reflected neighbor index
vectors (west/east/south/north), shared with the callers so boundary policy
lives in exactly one place.
"""


def green_sweeps(gt, src, coef, im1, ip1, jm1, jp1, nsweeps):
    """In-place Gauss-Seidel sweeps of (1 + 4c) x = src + c * (4-neighbor sum).

    West and south neighbors are read after their in-sweep update, east and
    north before. ``coef`` is the off-diagonal weight r2 / h^2.
    """
    height, width = gt.shape
    inv_diag = 1.0 / (1.0 + 4.0 * coef)
    for _ in range(nsweeps):
        for j in range(height):
            js = jm1[j]
            jn = jp1[j]
            for i in range(width):
                nb = gt[j, im1[i]] + gt[j, ip1[i]] + gt[js, i] + gt[jn, i]
                gt[j, i] = (src[j, i] + coef * nb) * inv_diag


def vector_sweeps(n1, n2, rhs1, rhs2, r4, rh, diag1, diag2, im1, ip1, jm1, jp1, nsweeps):
    """In-place Gauss-Seidel sweeps for the coupled two-component field system

        r4 * n_a  -  rh * [forward-diff of div](n)_a  =  rhs_a,   a in {1, 2}

    where div is the backward-difference divergence of (n1, n2) and
    rh = r3 / h^2 absorbs both 1/h factors. ``diag1``/``diag2`` hold the exact
    per-column / per-row diagonal entries (reflection thins the stencil at the
    far border). Each pixel updates n1 then n2 with fresh residuals.
    """
    height, width = n1.shape

    def dsum(i, j):
        # unscaled backward divergence at (i, j)
        return n1[j, i] - n1[j, im1[i]] + n2[j, i] - n2[jm1[j], i]

    for _ in range(nsweeps):
        for j in range(height):
            for i in range(width):
                t1 = rh * (dsum(ip1[i], j) - dsum(i, j))
                n1[j, i] += (rhs1[j, i] - r4 * n1[j, i] + t1) / diag1[i]
                t2 = rh * (dsum(i, jp1[j]) - dsum(i, j))
                n2[j, i] += (rhs2[j, i] - r4 * n2[j, i] + t2) / diag2[j]
