#include "advsac/math/kernels.hpp"

#include <cstring>

namespace advsac::math {

namespace {
Backend g_backend = Backend::kOpenmp;
}

void set_backend(Backend b) { g_backend = b; }
Backend backend() { return g_backend; }

void affine_forward_serial(const double* x, const double* w, const double* bias, double* y,
                           int batch, int in, int out) {
  for (int b = 0; b < batch; ++b) {
    const double* xr = x + static_cast<size_t>(b) * in;
    double* yr = y + static_cast<size_t>(b) * out;
    std::memcpy(yr, bias, sizeof(double) * static_cast<size_t>(out));
    for (int j = 0; j < in; ++j) {
      const double xv = xr[j];
      const double* wr = w + static_cast<size_t>(j) * out;
      for (int o = 0; o < out; ++o) yr[o] += xv * wr[o];
    }
  }
}

void affine_forward_omp(const double* x, const double* w, const double* bias, double* y,
                        int batch, int in, int out) {
#pragma omp parallel for schedule(static)
  for (int b = 0; b < batch; ++b) {
    const double* xr = x + static_cast<size_t>(b) * in;
    double* yr = y + static_cast<size_t>(b) * out;
    std::memcpy(yr, bias, sizeof(double) * static_cast<size_t>(out));
    for (int j = 0; j < in; ++j) {
      const double xv = xr[j];
      const double* wr = w + static_cast<size_t>(j) * out;
      for (int o = 0; o < out; ++o) yr[o] += xv * wr[o];
    }
  }
}

void affine_forward(const double* x, const double* w, const double* bias, double* y, int batch,
                    int in, int out) {
  if (g_backend == Backend::kOpenmp) {
    affine_forward_omp(x, w, bias, y, batch, in, out);
  } else {
    affine_forward_serial(x, w, bias, y, batch, in, out);
  }
}

void affine_backward_input_serial(const double* dy, const double* w, double* dx, int batch,
                                  int in, int out) {
  for (int b = 0; b < batch; ++b) {
    const double* dyr = dy + static_cast<size_t>(b) * out;
    double* dxr = dx + static_cast<size_t>(b) * in;
    for (int j = 0; j < in; ++j) {
      const double* wr = w + static_cast<size_t>(j) * out;
      double acc = 0.0;
      for (int o = 0; o < out; ++o) acc += dyr[o] * wr[o];
      dxr[j] = acc;
    }
  }
}

void affine_backward_input_omp(const double* dy, const double* w, double* dx, int batch, int in,
                               int out) {
#pragma omp parallel for schedule(static)
  for (int b = 0; b < batch; ++b) {
    const double* dyr = dy + static_cast<size_t>(b) * out;
    double* dxr = dx + static_cast<size_t>(b) * in;
    for (int j = 0; j < in; ++j) {
      const double* wr = w + static_cast<size_t>(j) * out;
      double acc = 0.0;
      for (int o = 0; o < out; ++o) acc += dyr[o] * wr[o];
      dxr[j] = acc;
    }
  }
}

void affine_backward_input(const double* dy, const double* w, double* dx, int batch, int in,
                           int out) {
  if (g_backend == Backend::kOpenmp) {
    affine_backward_input_omp(dy, w, dx, batch, in, out);
  } else {
    affine_backward_input_serial(dy, w, dx, batch, in, out);
  }
}

void affine_backward_params_serial(const double* x, const double* dy, double* dw, double* dbias,
                                   int batch, int in, int out) {
  for (int j = 0; j < in; ++j) {
    double* dwr = dw + static_cast<size_t>(j) * out;
    for (int b = 0; b < batch; ++b) {
      const double xv = x[static_cast<size_t>(b) * in + j];
      const double* dyr = dy + static_cast<size_t>(b) * out;
      for (int o = 0; o < out; ++o) dwr[o] += xv * dyr[o];
    }
  }
  for (int o = 0; o < out; ++o) {
    double acc = dbias[o];
    for (int b = 0; b < batch; ++b) acc += dy[static_cast<size_t>(b) * out + o];
    dbias[o] = acc;
  }
}

void affine_backward_params_omp(const double* x, const double* dy, double* dw, double* dbias,
                                int batch, int in, int out) {
  // Threads own disjoint rows of dw (resp. entries of dbias); the batch
  // reduction order per element matches the serial variant.
#pragma omp parallel for schedule(static)
  for (int j = 0; j < in; ++j) {
    double* dwr = dw + static_cast<size_t>(j) * out;
    for (int b = 0; b < batch; ++b) {
      const double xv = x[static_cast<size_t>(b) * in + j];
      const double* dyr = dy + static_cast<size_t>(b) * out;
      for (int o = 0; o < out; ++o) dwr[o] += xv * dyr[o];
    }
  }
#pragma omp parallel for schedule(static)
  for (int o = 0; o < out; ++o) {
    double acc = dbias[o];
    for (int b = 0; b < batch; ++b) acc += dy[static_cast<size_t>(b) * out + o];
    dbias[o] = acc;
  }
}

void affine_backward_params(const double* x, const double* dy, double* dw, double* dbias,
                            int batch, int in, int out) {
  if (g_backend == Backend::kOpenmp) {
    affine_backward_params_omp(x, dy, dw, dbias, batch, in, out);
  } else {
    affine_backward_params_serial(x, dy, dw, dbias, batch, in, out);
  }
}

}  // namespace advsac::math
