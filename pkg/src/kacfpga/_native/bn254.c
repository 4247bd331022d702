/* BN254 arithmetic in Montgomery form, 4 x 64-bit limbs.
 *
 * Nothing here is constant time; secret-dependent branches exist in
 * scalar multiplication and exponentiation.
 */
#include "bn254.h"

#include <string.h>

typedef uint64_t u64;
typedef unsigned __int128 u128;

typedef struct { u64 v[4]; } fp;
typedef struct { fp a, b; } fp2;
typedef struct { fp2 c0, c1, c2; } fp6;
typedef struct { fp6 c0, c1; } fp12;

typedef struct { fp x, y, z; } g1j;
typedef struct { fp2 x, y, z; } g2j;

static fp MOD;
static u64 PINV;
static fp R2;
static fp ONE;
static fp2 FROB[6];
static u64 LOOP[8];
static int LOOP_LIMBS;
static u64 HARD[16];
static int HARD_LIMBS;

/* ---------------------------------------------------------------- fp */

static inline int fp_geq_mod(const u64 t[4])
{
    for (int i = 3; i >= 0; i--) {
        if (t[i] > MOD.v[i]) return 1;
        if (t[i] < MOD.v[i]) return 0;
    }
    return 1;
}

static inline void fp_sub_mod(u64 t[4])
{
    u64 borrow = 0;
    for (int i = 0; i < 4; i++) {
        u128 d = (u128)t[i] - MOD.v[i] - borrow;
        t[i] = (u64)d;
        borrow = (u64)(d >> 64) & 1;
    }
}

static inline void fp_add(fp *r, const fp *a, const fp *b)
{
    u64 carry = 0;
    u64 t[4];
    for (int i = 0; i < 4; i++) {
        u128 s = (u128)a->v[i] + b->v[i] + carry;
        t[i] = (u64)s;
        carry = (u64)(s >> 64);
    }
    /* p < 2^254 so carry is always zero */
    if (fp_geq_mod(t)) fp_sub_mod(t);
    memcpy(r->v, t, sizeof t);
}

static inline void fp_sub(fp *r, const fp *a, const fp *b)
{
    u64 borrow = 0;
    u64 t[4];
    for (int i = 0; i < 4; i++) {
        u128 d = (u128)a->v[i] - b->v[i] - borrow;
        t[i] = (u64)d;
        borrow = (u64)(d >> 64) & 1;
    }
    if (borrow) {
        u64 carry = 0;
        for (int i = 0; i < 4; i++) {
            u128 s = (u128)t[i] + MOD.v[i] + carry;
            t[i] = (u64)s;
            carry = (u64)(s >> 64);
        }
    }
    memcpy(r->v, t, sizeof t);
}

static inline int fp_is_zero(const fp *a)
{
    return (a->v[0] | a->v[1] | a->v[2] | a->v[3]) == 0;
}

static inline int fp_eq(const fp *a, const fp *b)
{
    return memcmp(a->v, b->v, sizeof a->v) == 0;
}

static inline void fp_neg(fp *r, const fp *a)
{
    if (fp_is_zero(a)) {
        *r = *a;
        return;
    }
    fp z;
    memset(&z, 0, sizeof z);
    fp_sub(r, &z, a);
}

static inline void fp_dbl(fp *r, const fp *a)
{
    fp_add(r, a, a);
}

/* CIOS Montgomery multiplication. */
static void fp_mul(fp *r, const fp *a, const fp *b)
{
    u64 t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; i++) {
        u128 c = 0;
        u64 bi = b->v[i];
        for (int j = 0; j < 4; j++) {
            c += (u128)a->v[j] * bi + t[j];
            t[j] = (u64)c;
            c >>= 64;
        }
        c += t[4];
        t[4] = (u64)c;
        t[5] = (u64)(c >> 64);

        u64 m = t[0] * PINV;
        c = (u128)m * MOD.v[0] + t[0];
        c >>= 64;
        for (int j = 1; j < 4; j++) {
            c += (u128)m * MOD.v[j] + t[j];
            t[j - 1] = (u64)c;
            c >>= 64;
        }
        c += t[4];
        t[3] = (u64)c;
        t[4] = t[5] + (u64)(c >> 64);
    }
    if (t[4] || fp_geq_mod(t)) fp_sub_mod(t);
    memcpy(r->v, t, 4 * sizeof(u64));
}

static inline void fp_sqr(fp *r, const fp *a)
{
    fp_mul(r, a, a);
}

static void fp_pow_limbs(fp *r, const fp *a, const u64 *e, int elimbs)
{
    fp acc = ONE;
    for (int i = elimbs - 1; i >= 0; i--) {
        for (int bit = 63; bit >= 0; bit--) {
            fp_sqr(&acc, &acc);
            if ((e[i] >> bit) & 1) fp_mul(&acc, &acc, a);
        }
    }
    *r = acc;
}

static void fp_inv(fp *r, const fp *a)
{
    u64 e[4];
    memcpy(e, MOD.v, sizeof e);
    e[0] -= 2; /* p is odd and its low limb exceeds 2 */
    fp_pow_limbs(r, a, e, 4);
}

static void fp_from_canon(fp *r, const u64 in[4])
{
    fp t;
    memcpy(t.v, in, sizeof t.v);
    fp_mul(r, &t, &R2);
}

static void fp_to_canon(u64 out[4], const fp *a)
{
    fp one_raw;
    memset(&one_raw, 0, sizeof one_raw);
    one_raw.v[0] = 1;
    fp t;
    fp_mul(&t, a, &one_raw);
    memcpy(out, t.v, sizeof t.v);
}

/* --------------------------------------------------------------- fp2 */

static inline void fp2_add(fp2 *r, const fp2 *x, const fp2 *y)
{
    fp_add(&r->a, &x->a, &y->a);
    fp_add(&r->b, &x->b, &y->b);
}

static inline void fp2_sub(fp2 *r, const fp2 *x, const fp2 *y)
{
    fp_sub(&r->a, &x->a, &y->a);
    fp_sub(&r->b, &x->b, &y->b);
}

static inline void fp2_neg(fp2 *r, const fp2 *x)
{
    fp_neg(&r->a, &x->a);
    fp_neg(&r->b, &x->b);
}

static inline void fp2_dbl(fp2 *r, const fp2 *x)
{
    fp_dbl(&r->a, &x->a);
    fp_dbl(&r->b, &x->b);
}

static inline int fp2_is_zero(const fp2 *x)
{
    return fp_is_zero(&x->a) && fp_is_zero(&x->b);
}

static void fp2_mul(fp2 *r, const fp2 *x, const fp2 *y)
{
    fp t0, t1, s0, s1, t2;
    fp_mul(&t0, &x->a, &y->a);
    fp_mul(&t1, &x->b, &y->b);
    fp_add(&s0, &x->a, &x->b);
    fp_add(&s1, &y->a, &y->b);
    fp_mul(&t2, &s0, &s1);
    fp_sub(&r->a, &t0, &t1);
    fp_sub(&t2, &t2, &t0);
    fp_sub(&r->b, &t2, &t1);
}

static void fp2_sqr(fp2 *r, const fp2 *x)
{
    fp s, d, m;
    fp_add(&s, &x->a, &x->b);
    fp_sub(&d, &x->a, &x->b);
    fp_mul(&m, &x->a, &x->b);
    fp_mul(&r->a, &s, &d);
    fp_dbl(&r->b, &m);
}

static inline void fp2_mul_fp(fp2 *r, const fp2 *x, const fp *s)
{
    fp_mul(&r->a, &x->a, s);
    fp_mul(&r->b, &x->b, s);
}

/* multiply by xi = 9 + u */
static void fp2_mul_xi(fp2 *r, const fp2 *x)
{
    fp a9, b9, t;
    fp_dbl(&t, &x->a);
    fp_dbl(&t, &t);
    fp_dbl(&t, &t);
    fp_add(&a9, &t, &x->a);
    fp_dbl(&t, &x->b);
    fp_dbl(&t, &t);
    fp_dbl(&t, &t);
    fp_add(&b9, &t, &x->b);
    fp ra, rb;
    fp_sub(&ra, &a9, &x->b);
    fp_add(&rb, &x->a, &b9);
    r->a = ra;
    r->b = rb;
}

static inline void fp2_conj(fp2 *r, const fp2 *x)
{
    r->a = x->a;
    fp_neg(&r->b, &x->b);
}

static void fp2_inv(fp2 *r, const fp2 *x)
{
    fp t0, t1;
    fp_sqr(&t0, &x->a);
    fp_sqr(&t1, &x->b);
    fp_add(&t0, &t0, &t1);
    fp_inv(&t0, &t0);
    fp_mul(&r->a, &x->a, &t0);
    fp_mul(&t1, &x->b, &t0);
    fp_neg(&r->b, &t1);
}

/* --------------------------------------------------------------- fp6 */

static inline void fp6_add(fp6 *r, const fp6 *x, const fp6 *y)
{
    fp2_add(&r->c0, &x->c0, &y->c0);
    fp2_add(&r->c1, &x->c1, &y->c1);
    fp2_add(&r->c2, &x->c2, &y->c2);
}

static inline void fp6_sub(fp6 *r, const fp6 *x, const fp6 *y)
{
    fp2_sub(&r->c0, &x->c0, &y->c0);
    fp2_sub(&r->c1, &x->c1, &y->c1);
    fp2_sub(&r->c2, &x->c2, &y->c2);
}

static inline void fp6_neg(fp6 *r, const fp6 *x)
{
    fp2_neg(&r->c0, &x->c0);
    fp2_neg(&r->c1, &x->c1);
    fp2_neg(&r->c2, &x->c2);
}

static void fp6_mul(fp6 *r, const fp6 *x, const fp6 *y)
{
    fp2 t0, t1, t2, s0, s1, u, c0, c1, c2;
    fp2_mul(&t0, &x->c0, &y->c0);
    fp2_mul(&t1, &x->c1, &y->c1);
    fp2_mul(&t2, &x->c2, &y->c2);

    fp2_add(&s0, &x->c1, &x->c2);
    fp2_add(&s1, &y->c1, &y->c2);
    fp2_mul(&u, &s0, &s1);
    fp2_sub(&u, &u, &t1);
    fp2_sub(&u, &u, &t2);
    fp2_mul_xi(&u, &u);
    fp2_add(&c0, &u, &t0);

    fp2_add(&s0, &x->c0, &x->c1);
    fp2_add(&s1, &y->c0, &y->c1);
    fp2_mul(&u, &s0, &s1);
    fp2_sub(&u, &u, &t0);
    fp2_sub(&u, &u, &t1);
    fp2_mul_xi(&s0, &t2);
    fp2_add(&c1, &u, &s0);

    fp2_add(&s0, &x->c0, &x->c2);
    fp2_add(&s1, &y->c0, &y->c2);
    fp2_mul(&u, &s0, &s1);
    fp2_sub(&u, &u, &t0);
    fp2_sub(&u, &u, &t2);
    fp2_add(&c2, &u, &t1);

    r->c0 = c0;
    r->c1 = c1;
    r->c2 = c2;
}

static inline void fp6_mul_by_v(fp6 *r, const fp6 *x)
{
    fp2 t;
    fp2_mul_xi(&t, &x->c2);
    r->c2 = x->c1;
    r->c1 = x->c0;
    r->c0 = t;
}

/* x * (b0 + b1 v) */
static void fp6_mul_by_01(fp6 *r, const fp6 *x, const fp2 *b0, const fp2 *b1)
{
    fp2 t0, t1, s0, s1, u, c0, c1, c2;
    fp2_mul(&t0, &x->c0, b0);
    fp2_mul(&t1, &x->c1, b1);

    fp2_mul(&u, &x->c2, b1);
    fp2_mul_xi(&u, &u);
    fp2_add(&c0, &u, &t0);

    fp2_add(&s0, &x->c0, &x->c1);
    fp2_add(&s1, b0, b1);
    fp2_mul(&u, &s0, &s1);
    fp2_sub(&u, &u, &t0);
    fp2_sub(&c1, &u, &t1);

    fp2_mul(&u, &x->c2, b0);
    fp2_add(&c2, &u, &t1);

    r->c0 = c0;
    r->c1 = c1;
    r->c2 = c2;
}

/* x * (b1 v) */
static void fp6_mul_by_1(fp6 *r, const fp6 *x, const fp2 *b1)
{
    fp2 c0, c1, c2;
    fp2_mul(&c0, &x->c2, b1);
    fp2_mul_xi(&c0, &c0);
    fp2_mul(&c1, &x->c0, b1);
    fp2_mul(&c2, &x->c1, b1);
    r->c0 = c0;
    r->c1 = c1;
    r->c2 = c2;
}

static void fp6_inv(fp6 *r, const fp6 *x)
{
    fp2 c0, c1, c2, t, u;
    fp2_sqr(&c0, &x->c0);
    fp2_mul(&t, &x->c1, &x->c2);
    fp2_mul_xi(&t, &t);
    fp2_sub(&c0, &c0, &t);

    fp2_sqr(&c1, &x->c2);
    fp2_mul_xi(&c1, &c1);
    fp2_mul(&t, &x->c0, &x->c1);
    fp2_sub(&c1, &c1, &t);

    fp2_sqr(&c2, &x->c1);
    fp2_mul(&t, &x->c0, &x->c2);
    fp2_sub(&c2, &c2, &t);

    fp2_mul(&t, &x->c2, &c1);
    fp2_mul(&u, &x->c1, &c2);
    fp2_add(&t, &t, &u);
    fp2_mul_xi(&t, &t);
    fp2_mul(&u, &x->c0, &c0);
    fp2_add(&t, &t, &u);
    fp2_inv(&t, &t);

    fp2_mul(&r->c0, &c0, &t);
    fp2_mul(&r->c1, &c1, &t);
    fp2_mul(&r->c2, &c2, &t);
}

static inline int fp6_is_zero(const fp6 *x)
{
    return fp2_is_zero(&x->c0) && fp2_is_zero(&x->c1) && fp2_is_zero(&x->c2);
}

/* -------------------------------------------------------------- fp12 */

static void fp12_set_one(fp12 *r)
{
    memset(r, 0, sizeof *r);
    r->c0.c0.a = ONE;
}

static void fp12_mul(fp12 *r, const fp12 *x, const fp12 *y)
{
    fp6 t0, t1, s0, s1, c1;
    fp6_mul(&t0, &x->c0, &y->c0);
    fp6_mul(&t1, &x->c1, &y->c1);
    fp6_add(&s0, &x->c0, &x->c1);
    fp6_add(&s1, &y->c0, &y->c1);
    fp6_mul(&c1, &s0, &s1);
    fp6_sub(&c1, &c1, &t0);
    fp6_sub(&c1, &c1, &t1);
    fp6_mul_by_v(&t1, &t1);
    fp6_add(&r->c0, &t0, &t1);
    r->c1 = c1;
}

static void fp12_sqr(fp12 *r, const fp12 *x)
{
    fp6 t, s0, s1, vt;
    fp6_mul(&t, &x->c0, &x->c1);
    fp6_add(&s0, &x->c0, &x->c1);
    fp6_mul_by_v(&s1, &x->c1);
    fp6_add(&s1, &s1, &x->c0);
    fp6_mul(&s0, &s0, &s1);
    fp6_sub(&s0, &s0, &t);
    fp6_mul_by_v(&vt, &t);
    fp6_sub(&r->c0, &s0, &vt);
    fp6_add(&r->c1, &t, &t);
}

/* f *= (c + d v) + (e v) w */
static void fp12_mul_line(fp12 *f, const fp2 *c, const fp2 *d, const fp2 *e)
{
    fp6 t0, t1, s;
    fp2 de;
    fp6_mul_by_01(&t0, &f->c0, c, d);
    fp6_mul_by_1(&t1, &f->c1, e);
    fp6_add(&s, &f->c0, &f->c1);
    fp2_add(&de, d, e);
    fp6_mul_by_01(&s, &s, c, &de);
    fp6_sub(&s, &s, &t0);
    fp6_sub(&f->c1, &s, &t1);
    fp6_mul_by_v(&t1, &t1);
    fp6_add(&f->c0, &t0, &t1);
}

static inline void fp12_conj(fp12 *r, const fp12 *x)
{
    r->c0 = x->c0;
    fp6_neg(&r->c1, &x->c1);
}

static int fp12_inv(fp12 *r, const fp12 *x)
{
    fp6 t0, t1;
    fp6_mul(&t0, &x->c0, &x->c0);
    fp6_mul(&t1, &x->c1, &x->c1);
    fp6_mul_by_v(&t1, &t1);
    fp6_sub(&t0, &t0, &t1);
    if (fp6_is_zero(&t0)) return -1;
    fp6_inv(&t0, &t0);
    fp6_mul(&r->c0, &x->c0, &t0);
    fp6_mul(&t1, &x->c1, &t0);
    fp6_neg(&r->c1, &t1);
    return 0;
}

static void fp12_frob(fp12 *r, const fp12 *x)
{
    fp2 t;
    fp2_conj(&r->c0.c0, &x->c0.c0);
    fp2_conj(&t, &x->c0.c1);
    fp2_mul(&r->c0.c1, &t, &FROB[2]);
    fp2_conj(&t, &x->c0.c2);
    fp2_mul(&r->c0.c2, &t, &FROB[4]);
    fp2_conj(&t, &x->c1.c0);
    fp2_mul(&r->c1.c0, &t, &FROB[1]);
    fp2_conj(&t, &x->c1.c1);
    fp2_mul(&r->c1.c1, &t, &FROB[3]);
    fp2_conj(&t, &x->c1.c2);
    fp2_mul(&r->c1.c2, &t, &FROB[5]);
}

/* 4-bit fixed window, most significant limb last in e */
static void fp12_pow_limbs(fp12 *r, const fp12 *x, const u64 *e, int elimbs)
{
    fp12 table[16];
    fp12_set_one(&table[0]);
    table[1] = *x;
    for (int i = 2; i < 16; i++) fp12_mul(&table[i], &table[i - 1], x);

    fp12 acc;
    fp12_set_one(&acc);
    int started = 0;
    for (int i = elimbs - 1; i >= 0; i--) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            unsigned nib = (unsigned)((e[i] >> shift) & 0xF);
            if (started) {
                fp12_sqr(&acc, &acc);
                fp12_sqr(&acc, &acc);
                fp12_sqr(&acc, &acc);
                fp12_sqr(&acc, &acc);
            }
            if (nib) {
                fp12_mul(&acc, &acc, &table[nib]);
                started = 1;
            }
        }
    }
    *r = acc;
}

/* ------------------------------------------------------- conversions */

static void fp12_load(fp12 *r, const u64 in[48])
{
    fp2 *slots[6] = {&r->c0.c0, &r->c0.c1, &r->c0.c2, &r->c1.c0, &r->c1.c1, &r->c1.c2};
    for (int i = 0; i < 6; i++) {
        fp_from_canon(&slots[i]->a, in + 8 * i);
        fp_from_canon(&slots[i]->b, in + 8 * i + 4);
    }
}

static void fp12_store(u64 out[48], const fp12 *x)
{
    const fp2 *slots[6] = {&x->c0.c0, &x->c0.c1, &x->c0.c2, &x->c1.c0, &x->c1.c1, &x->c1.c2};
    for (int i = 0; i < 6; i++) {
        fp_to_canon(out + 8 * i, &slots[i]->a);
        fp_to_canon(out + 8 * i + 4, &slots[i]->b);
    }
}

static void fp2_load(fp2 *r, const u64 in[8])
{
    fp_from_canon(&r->a, in);
    fp_from_canon(&r->b, in + 4);
}

static void fp2_store(u64 out[8], const fp2 *x)
{
    fp_to_canon(out, &x->a);
    fp_to_canon(out + 4, &x->b);
}

/* ------------------------------------------------------------ curves */

static void g1_double(g1j *t)
{
    fp A, B, C, D, E, F, s;
    if (fp_is_zero(&t->z) || fp_is_zero(&t->y)) {
        memset(t, 0, sizeof *t);
        return;
    }
    fp_sqr(&A, &t->x);
    fp_sqr(&B, &t->y);
    fp_sqr(&C, &B);
    fp_add(&s, &t->x, &B);
    fp_sqr(&s, &s);
    fp_sub(&s, &s, &A);
    fp_sub(&s, &s, &C);
    fp_dbl(&D, &s);
    fp_dbl(&E, &A);
    fp_add(&E, &E, &A);
    fp_sqr(&F, &E);
    fp z3;
    fp_mul(&z3, &t->y, &t->z);
    fp_dbl(&z3, &z3);
    fp_dbl(&s, &D);
    fp_sub(&t->x, &F, &s);
    fp_sub(&s, &D, &t->x);
    fp_mul(&s, &E, &s);
    fp_dbl(&C, &C);
    fp_dbl(&C, &C);
    fp_dbl(&C, &C);
    fp_sub(&t->y, &s, &C);
    t->z = z3;
}

/* t += (ax, ay); inf tracked by z == 0 */
static void g1_add_affine(g1j *t, const fp *ax, const fp *ay)
{
    if (fp_is_zero(&t->z)) {
        t->x = *ax;
        t->y = *ay;
        t->z = ONE;
        return;
    }
    fp zz, u2, s2, h, r, hh, hhh, v, s;
    fp_sqr(&zz, &t->z);
    fp_mul(&u2, ax, &zz);
    fp_mul(&s2, &t->z, &zz);
    fp_mul(&s2, ay, &s2);
    fp_sub(&h, &u2, &t->x);
    fp_sub(&r, &s2, &t->y);
    if (fp_is_zero(&h)) {
        if (fp_is_zero(&r)) g1_double(t);
        else memset(t, 0, sizeof *t);
        return;
    }
    fp_sqr(&hh, &h);
    fp_mul(&hhh, &h, &hh);
    fp_mul(&v, &t->x, &hh);
    fp_sqr(&s, &r);
    fp_sub(&s, &s, &hhh);
    fp_sub(&s, &s, &v);
    fp_sub(&s, &s, &v);
    fp x3 = s;
    fp_sub(&s, &v, &x3);
    fp_mul(&s, &r, &s);
    fp_mul(&v, &t->y, &hhh);
    fp_sub(&t->y, &s, &v);
    fp_mul(&t->z, &t->z, &h);
    t->x = x3;
}

static void g2_double(g2j *t)
{
    fp2 A, B, C, D, E, F, s;
    if (fp2_is_zero(&t->z) || fp2_is_zero(&t->y)) {
        memset(t, 0, sizeof *t);
        return;
    }
    fp2_sqr(&A, &t->x);
    fp2_sqr(&B, &t->y);
    fp2_sqr(&C, &B);
    fp2_add(&s, &t->x, &B);
    fp2_sqr(&s, &s);
    fp2_sub(&s, &s, &A);
    fp2_sub(&s, &s, &C);
    fp2_dbl(&D, &s);
    fp2_dbl(&E, &A);
    fp2_add(&E, &E, &A);
    fp2_sqr(&F, &E);
    fp2 z3;
    fp2_mul(&z3, &t->y, &t->z);
    fp2_dbl(&z3, &z3);
    fp2_dbl(&s, &D);
    fp2_sub(&t->x, &F, &s);
    fp2_sub(&s, &D, &t->x);
    fp2_mul(&s, &E, &s);
    fp2_dbl(&C, &C);
    fp2_dbl(&C, &C);
    fp2_dbl(&C, &C);
    fp2_sub(&t->y, &s, &C);
    t->z = z3;
}

static void g2_add_affine(g2j *t, const fp2 *ax, const fp2 *ay)
{
    if (fp2_is_zero(&t->z)) {
        t->x = *ax;
        t->y = *ay;
        memset(&t->z, 0, sizeof t->z);
        t->z.a = ONE;
        return;
    }
    fp2 zz, u2, s2, h, r, hh, hhh, v, s;
    fp2_sqr(&zz, &t->z);
    fp2_mul(&u2, ax, &zz);
    fp2_mul(&s2, &t->z, &zz);
    fp2_mul(&s2, ay, &s2);
    fp2_sub(&h, &u2, &t->x);
    fp2_sub(&r, &s2, &t->y);
    if (fp2_is_zero(&h)) {
        if (fp2_is_zero(&r)) g2_double(t);
        else memset(t, 0, sizeof *t);
        return;
    }
    fp2_sqr(&hh, &h);
    fp2_mul(&hhh, &h, &hh);
    fp2_mul(&v, &t->x, &hh);
    fp2_sqr(&s, &r);
    fp2_sub(&s, &s, &hhh);
    fp2_sub(&s, &s, &v);
    fp2_sub(&s, &s, &v);
    fp2 x3 = s;
    fp2_sub(&s, &v, &x3);
    fp2_mul(&s, &r, &s);
    fp2_mul(&v, &t->y, &hhh);
    fp2_sub(&t->y, &s, &v);
    fp2_mul(&t->z, &t->z, &h);
    t->x = x3;
}

static int top_bit(const u64 *k, int klimbs)
{
    for (int i = klimbs - 1; i >= 0; i--) {
        if (k[i]) return 64 * i + 63 - __builtin_clzll(k[i]);
    }
    return -1;
}

int bn_g1_mul(const u64 pt[8], const u64 *k, int klimbs, u64 out[8])
{
    fp ax, ay;
    fp_from_canon(&ax, pt);
    fp_from_canon(&ay, pt + 4);
    g1j t;
    memset(&t, 0, sizeof t);
    for (int bit = top_bit(k, klimbs); bit >= 0; bit--) {
        g1_double(&t);
        if ((k[bit / 64] >> (bit % 64)) & 1) g1_add_affine(&t, &ax, &ay);
    }
    if (fp_is_zero(&t.z)) {
        memset(out, 0, 8 * sizeof(u64));
        return 1;
    }
    fp zi, zi2, x, y;
    fp_inv(&zi, &t.z);
    fp_sqr(&zi2, &zi);
    fp_mul(&x, &t.x, &zi2);
    fp_mul(&zi2, &zi2, &zi);
    fp_mul(&y, &t.y, &zi2);
    fp_to_canon(out, &x);
    fp_to_canon(out + 4, &y);
    return 0;
}

int bn_g2_mul(const u64 pt[16], const u64 *k, int klimbs, u64 out[16])
{
    fp2 ax, ay;
    fp2_load(&ax, pt);
    fp2_load(&ay, pt + 8);
    g2j t;
    memset(&t, 0, sizeof t);
    for (int bit = top_bit(k, klimbs); bit >= 0; bit--) {
        g2_double(&t);
        if ((k[bit / 64] >> (bit % 64)) & 1) g2_add_affine(&t, &ax, &ay);
    }
    if (fp2_is_zero(&t.z)) {
        memset(out, 0, 16 * sizeof(u64));
        return 1;
    }
    fp2 zi, zi2, x, y;
    fp2_inv(&zi, &t.z);
    fp2_sqr(&zi2, &zi);
    fp2_mul(&x, &t.x, &zi2);
    fp2_mul(&zi2, &zi2, &zi);
    fp2_mul(&y, &t.y, &zi2);
    fp2_store(out, &x);
    fp2_store(out + 8, &y);
    return 0;
}

/* ----------------------------------------------------------- pairing */

/* Reduced Tate pairing: Miller loop over the bits of q on the G1
 * point, lines evaluated at the untwisted G2 point (x w^2, y w^3).
 * Lines are scaled by F_p factors and vertical lines are dropped; both
 * vanish under the final exponentiation. */
static int miller(fp12 *f, const u64 g1[8], const u64 g2[16])
{
    fp xp, yp;
    fp2 xq, yq;
    fp_from_canon(&xp, g1);
    fp_from_canon(&yp, g1 + 4);
    fp2_load(&xq, g2);
    fp2_load(&yq, g2 + 8);

    g1j t = {xp, yp, ONE};
    fp12_set_one(f);
    int doublings = 0;
    fp2 c, d, e;
    memset(&c, 0, sizeof c);

    for (int bit = top_bit(LOOP, LOOP_LIMBS) - 1; bit >= 0; bit--) {
        fp zz, yy, m, s, z2;
        fp12_sqr(f, f);

        fp_sqr(&zz, &t.z);
        fp_sqr(&yy, &t.y);
        fp_sqr(&m, &t.x);
        fp_dbl(&s, &m);
        fp_add(&m, &m, &s);          /* m = 3x^2 */
        fp_mul(&s, &m, &t.x);
        fp_dbl(&yy, &yy);
        fp_sub(&c.a, &s, &yy);       /* 3x^3 - 2y^2 */
        fp_mul(&s, &m, &zz);
        fp_neg(&s, &s);
        fp2_mul_fp(&d, &xq, &s);     /* -3x^2 z^2 * xq */
        fp_mul(&z2, &t.y, &t.z);
        fp_dbl(&z2, &z2);
        fp_mul(&s, &z2, &zz);
        fp2_mul_fp(&e, &yq, &s);     /* 2 y z^3 * yq */
        fp12_mul_line(f, &c, &d, &e);
        g1_double(&t);
        doublings++;

        if ((LOOP[bit / 64] >> (bit % 64)) & 1) {
            fp h, r, hz;
            fp_sqr(&zz, &t.z);
            fp_mul(&h, &xp, &zz);
            fp_sub(&h, &h, &t.x);
            fp_mul(&r, &t.z, &zz);
            fp_mul(&r, &yp, &r);
            fp_sub(&r, &r, &t.y);
            if (fp_is_zero(&h)) {
                /* t = -P: vertical line only */
                memset(&t, 0, sizeof t);
                continue;
            }
            fp_mul(&hz, &h, &t.z);
            fp_mul(&s, &r, &xp);
            fp_mul(&m, &hz, &yp);
            fp_sub(&c.a, &s, &m);
            fp_neg(&s, &r);
            fp2_mul_fp(&d, &xq, &s);
            fp2_mul_fp(&e, &yq, &hz);
            fp12_mul_line(f, &c, &d, &e);
            g1_add_affine(&t, &xp, &yp);
        }
    }
    return doublings;
}

static void final_exp(fp12 *r, const fp12 *f)
{
    fp12 a, b;
    fp12_conj(&a, f);
    fp12_inv(&b, f);
    fp12_mul(&a, &a, &b);   /* f^(p^6 - 1) */
    fp12_frob(&b, &a);
    fp12_frob(&b, &b);
    fp12_mul(&a, &b, &a);   /* ^(p^2 + 1) */
    fp12_pow_limbs(r, &a, HARD, HARD_LIMBS);
}

int bn_miller_loop(const u64 g1[8], const u64 g2[16], u64 out[48])
{
    fp12 f;
    int n = miller(&f, g1, g2);
    fp12_store(out, &f);
    return n;
}

void bn_final_exp(const u64 in[48], u64 out[48])
{
    fp12 f, r;
    fp12_load(&f, in);
    final_exp(&r, &f);
    fp12_store(out, &r);
}

void bn_pairing(const u64 g1[8], const u64 g2[16], u64 out[48])
{
    fp12 f, r;
    miller(&f, g1, g2);
    final_exp(&r, &f);
    fp12_store(out, &r);
}

void bn_fp12_mul(const u64 a[48], const u64 b[48], u64 out[48])
{
    fp12 x, y;
    fp12_load(&x, a);
    fp12_load(&y, b);
    fp12_mul(&x, &x, &y);
    fp12_store(out, &x);
}

void bn_fp12_sqr(const u64 a[48], u64 out[48])
{
    fp12 x;
    fp12_load(&x, a);
    fp12_sqr(&x, &x);
    fp12_store(out, &x);
}

int bn_fp12_inv(const u64 a[48], u64 out[48])
{
    fp12 x, r;
    fp12_load(&x, a);
    if (fp12_inv(&r, &x)) return -1;
    fp12_store(out, &r);
    return 0;
}

void bn_fp12_conj(const u64 a[48], u64 out[48])
{
    fp12 x;
    fp12_load(&x, a);
    fp12_conj(&x, &x);
    fp12_store(out, &x);
}

void bn_fp12_pow(const u64 a[48], const u64 *e, int elimbs, u64 out[48])
{
    fp12 x, r;
    fp12_load(&x, a);
    fp12_pow_limbs(&r, &x, e, elimbs);
    fp12_store(out, &r);
}

void bn_fp12_frobenius(const u64 a[48], int power, u64 out[48])
{
    fp12 x, t;
    fp12_load(&x, a);
    for (int i = 0; i < power; i++) {
        fp12_frob(&t, &x);
        x = t;
    }
    fp12_store(out, &x);
}

/* ---------------------------------------------------------------- init */

void bn_init(const u64 p[4], u64 pinv, const u64 r2[4], const u64 frob[48],
             const u64 *loop, int loop_limbs, const u64 *hard, int hard_limbs)
{
    memcpy(MOD.v, p, sizeof MOD.v);
    PINV = pinv;
    memcpy(R2.v, r2, sizeof R2.v);
    fp one_raw;
    memset(&one_raw, 0, sizeof one_raw);
    one_raw.v[0] = 1;
    fp_mul(&ONE, &one_raw, &R2);
    for (int k = 0; k < 6; k++) fp2_load(&FROB[k], frob + 8 * k);
    memset(LOOP, 0, sizeof LOOP);
    memcpy(LOOP, loop, (size_t)loop_limbs * sizeof(u64));
    LOOP_LIMBS = loop_limbs;
    memset(HARD, 0, sizeof HARD);
    memcpy(HARD, hard, (size_t)hard_limbs * sizeof(u64));
    HARD_LIMBS = hard_limbs;
}
