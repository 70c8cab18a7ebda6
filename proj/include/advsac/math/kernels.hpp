#pragma once

#include <cstddef>

namespace advsac::math {

// Dense affine kernels behind the network code. Each comes in two variants:
// a serial reference and an OpenMP one. The OpenMP variants parallelize only
// across disjoint output elements and keep every per-element reduction in the
// same order as the serial code, so the two are bit-identical for any thread
// count. Matrices are row-major; weights are stored input-major (in x out) so
// the forward inner loop is a contiguous axpy.

enum class Backend { kSerial, kOpenmp };

void set_backend(Backend b);
Backend backend();

// y[b,o] = bias[o] + sum_j x[b,j] * w[j,o]
void affine_forward_serial(const double* x, const double* w, const double* bias, double* y,
                           int batch, int in, int out);
void affine_forward_omp(const double* x, const double* w, const double* bias, double* y,
                        int batch, int in, int out);
void affine_forward(const double* x, const double* w, const double* bias, double* y, int batch,
                    int in, int out);

// dx[b,j] = sum_o dy[b,o] * w[j,o]
void affine_backward_input_serial(const double* dy, const double* w, double* dx, int batch,
                                  int in, int out);
void affine_backward_input_omp(const double* dy, const double* w, double* dx, int batch, int in,
                               int out);
void affine_backward_input(const double* dy, const double* w, double* dx, int batch, int in,
                           int out);

// dw[j,o] += sum_b x[b,j] * dy[b,o];  dbias[o] += sum_b dy[b,o]
// Accumulates: caller zeroes dw/dbias before the first call.
void affine_backward_params_serial(const double* x, const double* dy, double* dw, double* dbias,
                                   int batch, int in, int out);
void affine_backward_params_omp(const double* x, const double* dy, double* dw, double* dbias,
                                int batch, int in, int out);
void affine_backward_params(const double* x, const double* dy, double* dw, double* dbias,
                            int batch, int in, int out);

}  // namespace advsac::math
