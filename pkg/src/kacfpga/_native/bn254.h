/* BN254 field, curve and pairing kernels.
 *
 * All values crossing this interface are canonical (non-Montgomery)
 * little-endian 64-bit limbs. Layouts:
 *   fp    : 4 limbs
 *   fp2   : 8 limbs  (a0, a1)
 *   fp12  : 48 limbs (six fp2 in tower slot order, see params.py)
 *   g1    : 8 limbs  (x, y) affine
 *   g2    : 16 limbs (x, y) affine
 */
#ifndef KACFPGA_BN254_H
#define KACFPGA_BN254_H

#include <stdint.h>

void bn_init(const uint64_t p[4], uint64_t pinv, const uint64_t r2[4],
             const uint64_t frob[48], const uint64_t *loop, int loop_limbs,
             const uint64_t *hard, int hard_limbs);

/* Return 1 when the result is the point at infinity. */
int bn_g1_mul(const uint64_t pt[8], const uint64_t *k, int klimbs, uint64_t out[8]);
int bn_g2_mul(const uint64_t pt[16], const uint64_t *k, int klimbs, uint64_t out[16]);

int bn_miller_loop(const uint64_t g1[8], const uint64_t g2[16], uint64_t out[48]);
void bn_final_exp(const uint64_t f[48], uint64_t out[48]);
void bn_pairing(const uint64_t g1[8], const uint64_t g2[16], uint64_t out[48]);

void bn_fp12_mul(const uint64_t a[48], const uint64_t b[48], uint64_t out[48]);
void bn_fp12_sqr(const uint64_t a[48], uint64_t out[48]);
/* Return -1 on zero input. */
int bn_fp12_inv(const uint64_t a[48], uint64_t out[48]);
void bn_fp12_conj(const uint64_t a[48], uint64_t out[48]);
void bn_fp12_pow(const uint64_t a[48], const uint64_t *e, int elimbs, uint64_t out[48]);
void bn_fp12_frobenius(const uint64_t a[48], int power, uint64_t out[48]);

#endif
