"""BN254 curve parameters and derived constants.

The curve is y^2 = x^3 + 3 over F_p with the sextic D-twist
y^2 = x^3 + 3/(9+u) over F_p^2 = F_p[u]/(u^2 + 1).

Tower used everywhere in this package::

    F_p2  = F_p[u]  / (u^2 + 1)
    F_p6  = F_p2[v] / (v^3 - (9 + u))
    F_p12 = F_p6[w] / (w^2 - v)

An F_p12 element is stored as six F_p2 coefficients in the order
``C0.c0, C0.c1, C0.c2, C1.c0, C1.c1, C1.c2`` where the element is
``C0 + C1*w`` and ``Ci = ci0 + ci1*v + ci2*v^2``.
"""

# BN generator parameter.
BN_X = 4965661367192848881

P = 36 * BN_X**4 + 36 * BN_X**3 + 24 * BN_X**2 + 6 * BN_X + 1
Q = 36 * BN_X**4 + 36 * BN_X**3 + 18 * BN_X**2 + 6 * BN_X + 1

assert P == 21888242871839275222246405745257275088696311157297823662689037894645226208583
assert Q == 21888242871839275222246405745257275088548364400416034343698204186575808495617

CURVE_B = 3

# Quadratic non-residue of F_p2 used to build F_p6 (v^3 = XI).
XI = (9, 1)

G1_GENERATOR = (1, 2)
G2_GENERATOR = (
    (
        10857046999023057135944570762232829481370756359578518086990519993285655852781,
        11559732032986387107991004021392285783925812861821192530917403151452391805634,
    ),
    (
        8495653923123431417604973247489272438418190587263600148770280649306958101930,
        4082367875863433681332203403145435568316851327593401208105741076214120093531,
    ),
)

# Miller loop runs over the bits of the group order (reduced Tate pairing).
MILLER_LOOP_CONSTANT = Q
MILLER_DOUBLINGS = MILLER_LOOP_CONSTANT.bit_length() - 1

FINAL_EXPONENT = (P**12 - 1) // Q
# (p^12 - 1)/q = (p^6 - 1)(p^2 + 1) * HARD_EXPONENT
HARD_EXPONENT = (P**4 - P**2 + 1) // Q
assert (P**6 - 1) * (P**2 + 1) * HARD_EXPONENT == FINAL_EXPONENT


def _fp2_mul(a, b):
    t0 = a[0] * b[0]
    t1 = a[1] * b[1]
    return ((t0 - t1) % P, ((a[0] + a[1]) * (b[0] + b[1]) - t0 - t1) % P)


def _fp2_pow(a, e):
    result = (1, 0)
    while e:
        if e & 1:
            result = _fp2_mul(result, a)
        a = _fp2_mul(a, a)
        e >>= 1
    return result


def _fp2_inv(a):
    t = pow(a[0] * a[0] + a[1] * a[1], -1, P)
    return (a[0] * t % P, -a[1] * t % P)


# Frobenius coefficients: w^(k*(p-1)) = XI^(k*(p-1)/6) for k = 0..5.
FROBENIUS_W = tuple(_fp2_pow(XI, k * (P - 1) // 6) for k in range(6))

TWIST_B = _fp2_mul((CURVE_B, 0), _fp2_inv(XI))

# Position of each stored F_p2 coefficient as a power of w.
W_POWER_OF_SLOT = (0, 2, 4, 1, 3, 5)
