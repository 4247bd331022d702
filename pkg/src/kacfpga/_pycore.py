"""Pure-Python arithmetic kernels.

Same interface as the compiled ``_fastcore`` module; used when the
extension is not built or when ``KACFPGA_BACKEND=python`` is set.

Boundary representations:
  * G1 affine point: ``(x, y)`` or ``None`` for infinity
  * G2 affine point: ``((x0, x1), (y0, y1))`` or ``None``
  * F_p12 element: flat tuple of 12 ints (see ``params``)
"""

from kacfpga.params import FROBENIUS_W, HARD_EXPONENT, MILLER_LOOP_CONSTANT, P

NAME = "python"

# --- F_p2 -------------------------------------------------------------------


def _f2_add(a, b):
    return ((a[0] + b[0]) % P, (a[1] + b[1]) % P)


def _f2_sub(a, b):
    return ((a[0] - b[0]) % P, (a[1] - b[1]) % P)


def _f2_neg(a):
    return (-a[0] % P, -a[1] % P)


def _f2_mul(a, b):
    t0 = a[0] * b[0]
    t1 = a[1] * b[1]
    return ((t0 - t1) % P, ((a[0] + a[1]) * (b[0] + b[1]) - t0 - t1) % P)


def _f2_sqr(a):
    return ((a[0] + a[1]) * (a[0] - a[1]) % P, 2 * a[0] * a[1] % P)


def _f2_scale(a, s):
    return (a[0] * s % P, a[1] * s % P)


def _f2_mul_xi(a):
    return ((9 * a[0] - a[1]) % P, (a[0] + 9 * a[1]) % P)


def _f2_inv(a):
    t = pow(a[0] * a[0] + a[1] * a[1], -1, P)
    return (a[0] * t % P, -a[1] * t % P)


def _f2_conj(a):
    return (a[0], -a[1] % P)


_F2_ZERO = (0, 0)
_F2_ONE = (1, 0)

# --- F_p6 -------------------------------------------------------------------


def _f6_add(a, b):
    return (_f2_add(a[0], b[0]), _f2_add(a[1], b[1]), _f2_add(a[2], b[2]))


def _f6_sub(a, b):
    return (_f2_sub(a[0], b[0]), _f2_sub(a[1], b[1]), _f2_sub(a[2], b[2]))


def _f6_neg(a):
    return (_f2_neg(a[0]), _f2_neg(a[1]), _f2_neg(a[2]))


def _f6_mul(a, b):
    a0, a1, a2 = a
    b0, b1, b2 = b
    t0 = _f2_mul(a0, b0)
    t1 = _f2_mul(a1, b1)
    t2 = _f2_mul(a2, b2)
    c0 = _f2_add(_f2_mul_xi(_f2_sub(_f2_sub(_f2_mul(_f2_add(a1, a2), _f2_add(b1, b2)), t1), t2)), t0)
    c1 = _f2_add(_f2_sub(_f2_sub(_f2_mul(_f2_add(a0, a1), _f2_add(b0, b1)), t0), t1), _f2_mul_xi(t2))
    c2 = _f2_add(_f2_sub(_f2_sub(_f2_mul(_f2_add(a0, a2), _f2_add(b0, b2)), t0), t2), t1)
    return (c0, c1, c2)


def _f6_mul_by_v(a):
    return (_f2_mul_xi(a[2]), a[0], a[1])


def _f6_mul_by_01(a, b0, b1):
    a0, a1, a2 = a
    t0 = _f2_mul(a0, b0)
    t1 = _f2_mul(a1, b1)
    c0 = _f2_add(_f2_mul_xi(_f2_mul(a2, b1)), t0)
    c1 = _f2_sub(_f2_sub(_f2_mul(_f2_add(a0, a1), _f2_add(b0, b1)), t0), t1)
    c2 = _f2_add(_f2_mul(a2, b0), t1)
    return (c0, c1, c2)


def _f6_mul_by_1(a, b1):
    return (_f2_mul_xi(_f2_mul(a[2], b1)), _f2_mul(a[0], b1), _f2_mul(a[1], b1))


def _f6_inv(a):
    a0, a1, a2 = a
    c0 = _f2_sub(_f2_sqr(a0), _f2_mul_xi(_f2_mul(a1, a2)))
    c1 = _f2_sub(_f2_mul_xi(_f2_sqr(a2)), _f2_mul(a0, a1))
    c2 = _f2_sub(_f2_sqr(a1), _f2_mul(a0, a2))
    t = _f2_add(_f2_mul(a0, c0), _f2_mul_xi(_f2_add(_f2_mul(a2, c1), _f2_mul(a1, c2))))
    ti = _f2_inv(t)
    return (_f2_mul(c0, ti), _f2_mul(c1, ti), _f2_mul(c2, ti))


_F6_ZERO = (_F2_ZERO, _F2_ZERO, _F2_ZERO)
_F6_ONE = (_F2_ONE, _F2_ZERO, _F2_ZERO)

# --- F_p12 ------------------------------------------------------------------


def _f12_mul(a, b):
    t0 = _f6_mul(a[0], b[0])
    t1 = _f6_mul(a[1], b[1])
    c1 = _f6_sub(_f6_sub(_f6_mul(_f6_add(a[0], a[1]), _f6_add(b[0], b[1])), t0), t1)
    return (_f6_add(t0, _f6_mul_by_v(t1)), c1)


def _f12_sqr(a):
    a0, a1 = a
    t = _f6_mul(a0, a1)
    c0 = _f6_sub(_f6_sub(_f6_mul(_f6_add(a0, a1), _f6_add(a0, _f6_mul_by_v(a1))), t), _f6_mul_by_v(t))
    return (c0, _f6_add(t, t))


def _f12_mul_line(f, c, d, e):
    # line = (c, d, 0) + (0, e, 0) w
    t0 = _f6_mul_by_01(f[0], c, d)
    t1 = _f6_mul_by_1(f[1], e)
    c1 = _f6_sub(_f6_sub(_f6_mul_by_01(_f6_add(f[0], f[1]), c, _f2_add(d, e)), t0), t1)
    return (_f6_add(t0, _f6_mul_by_v(t1)), c1)


def _f12_conj(a):
    return (a[0], _f6_neg(a[1]))


def _f12_inv(a):
    t = _f6_sub(_f6_mul(a[0], a[0]), _f6_mul_by_v(_f6_mul(a[1], a[1])))
    if t == _F6_ZERO:
        raise ZeroDivisionError("F_p12 inverse of zero")
    ti = _f6_inv(t)
    return (_f6_mul(a[0], ti), _f6_neg(_f6_mul(a[1], ti)))


def _f12_frob(a):
    (x0, x2, x4), (x1, x3, x5) = a
    g = FROBENIUS_W
    return (
        (_f2_conj(x0), _f2_mul(_f2_conj(x2), g[2]), _f2_mul(_f2_conj(x4), g[4])),
        (_f2_mul(_f2_conj(x1), g[1]), _f2_mul(_f2_conj(x3), g[3]), _f2_mul(_f2_conj(x5), g[5])),
    )


def _f12_pow(a, e):
    result = (_F6_ONE, _F6_ZERO)
    for bit in bin(e)[2:] if e else "":
        result = _f12_sqr(result)
        if bit == "1":
            result = _f12_mul(result, a)
    return result


_F12_ONE = (_F6_ONE, _F6_ZERO)


def _unflat(x):
    return (
        ((x[0], x[1]), (x[2], x[3]), (x[4], x[5])),
        ((x[6], x[7]), (x[8], x[9]), (x[10], x[11])),
    )


def _flat(a):
    return tuple(v for c6 in a for c2 in c6 for v in c2)


# --- curves -----------------------------------------------------------------
# Jacobian coordinates, generic over the base field via small op tables.

_FP_OPS = (
    lambda a, b: (a + b) % P,
    lambda a, b: (a - b) % P,
    lambda a, b: a * b % P,
    lambda a: a * a % P,
    lambda a: pow(a, -1, P),
    0,
    1,
)
_FP2_OPS = (_f2_add, _f2_sub, _f2_mul, _f2_sqr, _f2_inv, _F2_ZERO, _F2_ONE)


def _jac_double(T, ops):
    add, sub, mul, sqr, _, zero, _ = ops
    X, Y, Z = T
    if Z == zero or Y == zero:
        return None
    A = sqr(X)
    B = sqr(Y)
    C = sqr(B)
    D = sub(sub(sqr(add(X, B)), A), C)
    D = add(D, D)
    E = add(add(A, A), A)
    F = sqr(E)
    X3 = sub(F, add(D, D))
    C8 = add(C, C)
    C8 = add(C8, C8)
    C8 = add(C8, C8)
    Y3 = sub(mul(E, sub(D, X3)), C8)
    YZ = mul(Y, Z)
    return (X3, Y3, add(YZ, YZ))


def _jac_add_affine(T, A, ops):
    add, sub, mul, sqr, _, zero, one = ops
    if T is None:
        return (A[0], A[1], one)
    X1, Y1, Z1 = T
    Z1Z1 = sqr(Z1)
    U2 = mul(A[0], Z1Z1)
    S2 = mul(A[1], mul(Z1, Z1Z1))
    H = sub(U2, X1)
    R = sub(S2, Y1)
    if H == zero:
        if R == zero:
            return _jac_double(T, ops)
        return None
    HH = sqr(H)
    HHH = mul(H, HH)
    V = mul(X1, HH)
    X3 = sub(sub(sqr(R), HHH), add(V, V))
    Y3 = sub(mul(R, sub(V, X3)), mul(Y1, HHH))
    return (X3, Y3, mul(Z1, H))


def _jac_to_affine(T, ops):
    if T is None:
        return None
    _, _, mul, sqr, inv, zero, _ = ops
    if T[2] == zero:
        return None
    zi = inv(T[2])
    zi2 = sqr(zi)
    return (mul(T[0], zi2), mul(T[1], mul(zi2, zi)))


def _scalar_mul(k, A, ops):
    if A is None or k <= 0:
        return None
    T = None
    for bit in bin(k)[2:]:
        if T is not None:
            T = _jac_double(T, ops)
        if bit == "1":
            T = _jac_add_affine(T, A, ops)
    return _jac_to_affine(T, ops)


def g1_mul(k, point):
    return _scalar_mul(k, point, _FP_OPS)


def g2_mul(k, point):
    return _scalar_mul(k, point, _FP2_OPS)


# --- pairing ----------------------------------------------------------------


def _miller(P1, Q2):
    xP, yP = P1
    xQ, yQ = Q2
    X, Y, Z = xP, yP, 1
    f = _F12_ONE
    doublings = 0
    bits = bin(MILLER_LOOP_CONSTANT)[3:]
    for bit in bits:
        f = _f12_sqr(f)
        ZZ = Z * Z % P
        YY = Y * Y % P
        M = 3 * X * X % P
        c = (M * X - 2 * YY) % P
        d = _f2_scale(xQ, -M * ZZ % P)
        Znew = 2 * Y * Z % P
        e = _f2_scale(yQ, Znew * ZZ % P)
        f = _f12_mul_line(f, (c, 0), d, e)
        X, Y, Z = _jac_double((X, Y, Z), _FP_OPS)
        doublings += 1
        if bit == "1":
            ZZ = Z * Z % P
            H = (xP * ZZ - X) % P
            R = (yP * Z * ZZ - Y) % P
            if H == 0:
                # T = -P: vertical line, lies in F_p6 and dies in the final exponentiation
                X, Y, Z = 0, 1, 0
                continue
            HZ = H * Z % P
            c = (R * xP - HZ * yP) % P
            d = _f2_scale(xQ, -R % P)
            e = _f2_scale(yQ, HZ)
            f = _f12_mul_line(f, (c, 0), d, e)
            X, Y, Z = _jac_add_affine((X, Y, Z), P1, _FP_OPS)
    return f, doublings


def _final_exp(f):
    f1 = _f12_mul(_f12_conj(f), _f12_inv(f))
    f2 = _f12_mul(_f12_frob(_f12_frob(f1)), f1)
    return _f12_pow(f2, HARD_EXPONENT)


def miller_loop(P1, Q2):
    f, doublings = _miller(P1, Q2)
    return _flat(f), doublings


def final_exponentiation(f):
    return _flat(_final_exp(_unflat(f)))


def pairing(P1, Q2):
    f, _ = _miller(P1, Q2)
    return _flat(_final_exp(f))


def fp12_mul(a, b):
    return _flat(_f12_mul(_unflat(a), _unflat(b)))


def fp12_sqr(a):
    return _flat(_f12_sqr(_unflat(a)))


def fp12_inv(a):
    return _flat(_f12_inv(_unflat(a)))


def fp12_conj(a):
    return _flat(_f12_conj(_unflat(a)))


def fp12_pow(a, e):
    return _flat(_f12_pow(_unflat(a), e))


def fp12_frobenius(a, power=1):
    x = _unflat(a)
    for _ in range(power % 12):
        x = _f12_frob(x)
    return _flat(x)
