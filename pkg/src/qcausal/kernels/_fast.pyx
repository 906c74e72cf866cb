# Compiled measurement kernels; contract-identical to kernels/pure.py.
import numpy as np


cdef double _SQ2 = 0.7071067811865475244008443621
# eigvecs[axis][state][component]; axes X, Y, Z; state 0 = up, 1 = down.
cdef double complex[3][2][2] _VECS
_VECS[0][0][0] = _SQ2;  _VECS[0][0][1] = _SQ2
_VECS[0][1][0] = _SQ2;  _VECS[0][1][1] = -_SQ2
_VECS[1][0][0] = _SQ2;  _VECS[1][0][1] = _SQ2 * 1j
_VECS[1][1][0] = _SQ2;  _VECS[1][1][1] = -_SQ2 * 1j
_VECS[2][0][0] = 1.0;   _VECS[2][0][1] = 0.0
_VECS[2][1][0] = 0.0;   _VECS[2][1][1] = 1.0


def joint_probs_common(const double complex[:, ::1] rho,
                       const double complex[:, ::1] f_early,
                       const double complex[:, ::1] f_late):
    """Joint outcome probabilities for a two-qubit state, shape (3, 4)."""
    out_arr = np.empty((3, 4))
    cdef double[:, ::1] out = out_arr
    cdef double complex va[2]
    cdef double complex wb[2]
    cdef double complex phi[4]
    cdef double complex acc
    cdef int axis, a, b, col, j, k
    for axis in range(3):
        col = 0
        for a in range(2):
            va[0] = f_early[0, 0] * _VECS[axis][a][0] + f_early[0, 1] * _VECS[axis][a][1]
            va[1] = f_early[1, 0] * _VECS[axis][a][0] + f_early[1, 1] * _VECS[axis][a][1]
            for b in range(2):
                wb[0] = f_late[0, 0] * _VECS[axis][b][0] + f_late[0, 1] * _VECS[axis][b][1]
                wb[1] = f_late[1, 0] * _VECS[axis][b][0] + f_late[1, 1] * _VECS[axis][b][1]
                phi[0] = va[0] * wb[0]
                phi[1] = va[0] * wb[1]
                phi[2] = va[1] * wb[0]
                phi[3] = va[1] * wb[1]
                acc = 0
                for j in range(4):
                    for k in range(4):
                        acc = acc + phi[j].conjugate() * rho[j, k] * phi[k]
                out[axis, col] = acc.real
                col += 1
    return out_arr


def joint_probs_causal(const double complex[:, ::1] u,
                       const double complex[:, ::1] rho_early,
                       const double complex[:, ::1] f_early,
                       const double complex[:, ::1] f_late):
    """Joint outcome probabilities for a direct cause, shape (3, 4)."""
    out_arr = np.empty((3, 4))
    cdef double[:, ::1] out = out_arr
    cdef double complex va[2]
    cdef double complex wb[2]
    cdef double complex uva[2]
    cdef double complex amp, acc
    cdef double p_first
    cdef int axis, a, b, col
    for axis in range(3):
        col = 0
        for a in range(2):
            va[0] = f_early[0, 0] * _VECS[axis][a][0] + f_early[0, 1] * _VECS[axis][a][1]
            va[1] = f_early[1, 0] * _VECS[axis][a][0] + f_early[1, 1] * _VECS[axis][a][1]
            acc = (va[0].conjugate() * (rho_early[0, 0] * va[0] + rho_early[0, 1] * va[1])
                   + va[1].conjugate() * (rho_early[1, 0] * va[0] + rho_early[1, 1] * va[1]))
            p_first = acc.real
            uva[0] = u[0, 0] * va[0] + u[0, 1] * va[1]
            uva[1] = u[1, 0] * va[0] + u[1, 1] * va[1]
            for b in range(2):
                wb[0] = f_late[0, 0] * _VECS[axis][b][0] + f_late[0, 1] * _VECS[axis][b][1]
                wb[1] = f_late[1, 0] * _VECS[axis][b][0] + f_late[1, 1] * _VECS[axis][b][1]
                amp = wb[0].conjugate() * uva[0] + wb[1].conjugate() * uva[1]
                out[axis, col] = p_first * (amp.real * amp.real + amp.imag * amp.imag)
                col += 1
    return out_arr
