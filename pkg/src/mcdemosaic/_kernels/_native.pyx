# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython sweep kernels. Must mirror pure.py update-for-update; the test
suite asserts both backends produce the same iterates."""


def green_sweeps(double[:, ::1] gt, double[:, ::1] src, double coef,
                 Py_ssize_t[::1] im1, Py_ssize_t[::1] ip1,
                 Py_ssize_t[::1] jm1, Py_ssize_t[::1] jp1, int nsweeps):
    cdef Py_ssize_t height = gt.shape[0]
    cdef Py_ssize_t width = gt.shape[1]
    cdef double inv_diag = 1.0 / (1.0 + 4.0 * coef)
    cdef Py_ssize_t i, j, js, jn
    cdef int s
    cdef double nb
    for s in range(nsweeps):
        for j in range(height):
            js = jm1[j]
            jn = jp1[j]
            for i in range(width):
                nb = gt[j, im1[i]] + gt[j, ip1[i]] + gt[js, i] + gt[jn, i]
                gt[j, i] = (src[j, i] + coef * nb) * inv_diag


cdef inline double _dsum(double[:, ::1] n1, double[:, ::1] n2,
                         Py_ssize_t[::1] im1, Py_ssize_t[::1] jm1,
                         Py_ssize_t i, Py_ssize_t j) noexcept nogil:
    return n1[j, i] - n1[j, im1[i]] + n2[j, i] - n2[jm1[j], i]


def vector_sweeps(double[:, ::1] n1, double[:, ::1] n2,
                  double[:, ::1] rhs1, double[:, ::1] rhs2,
                  double r4, double rh,
                  double[::1] diag1, double[::1] diag2,
                  Py_ssize_t[::1] im1, Py_ssize_t[::1] ip1,
                  Py_ssize_t[::1] jm1, Py_ssize_t[::1] jp1, int nsweeps):
    cdef Py_ssize_t height = n1.shape[0]
    cdef Py_ssize_t width = n1.shape[1]
    cdef Py_ssize_t i, j
    cdef int s
    cdef double t1, t2
    for s in range(nsweeps):
        for j in range(height):
            for i in range(width):
                t1 = rh * (_dsum(n1, n2, im1, jm1, ip1[i], j)
                           - _dsum(n1, n2, im1, jm1, i, j))
                n1[j, i] += (rhs1[j, i] - r4 * n1[j, i] + t1) / diag1[i]
                t2 = rh * (_dsum(n1, n2, im1, jm1, i, jp1[j])
                           - _dsum(n1, n2, im1, jm1, i, j))
                n2[j, i] += (rhs2[j, i] - r4 * n2[j, i] + t2) / diag2[j]
