/* Accelerator entry points targeted by liftc-generated stubs.
 *
 * One entry point per registry operator. Sequence values travel as
 * (pointer, length) pairs, matrices as row-major (pointer, rows, cols).
 * Implementations are provided by the accelerator runtime; this header only
 * fixes the call surface so emitted stubs compile stand-alone.
 */
#ifndef LIFTC_ACCEL_H
#define LIFTC_ACCEL_H

#define LIFTC_MAX_TENSOR 4096

#ifdef __cplusplus
extern "C" {
#endif

int liftc_dot_product(const int *a, int a_len, const int *b, int b_len);

void liftc_conv1d(const int *data, int data_len, const int *kernel,
                  int kernel_len, int stride, int *out, int *out_len);

void liftc_elemwise_add(const int *a, int a_len, const int *b, int b_len,
                        int *out, int *out_len);

void liftc_elemwise_mul(const int *a, int a_len, const int *b, int b_len,
                        int *out, int *out_len);

void liftc_scalar_scale(const int *a, int a_len, int c, int *out,
                        int *out_len);

void liftc_vecmat(const int *r, int r_len, const int *m, int m_rows,
                  int m_cols, int *out, int *out_len);

void liftc_matmul(const int *a, int a_rows, int a_cols, const int *b,
                  int b_rows, int b_cols, int *out, int *out_rows,
                  int *out_cols);

#ifdef __cplusplus
}
#endif

#endif /* LIFTC_ACCEL_H */
