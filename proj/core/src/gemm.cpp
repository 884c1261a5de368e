// Copyright 2026 The SpeckleNet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "specklenet/gemm.hpp"

#include <algorithm>
#include <vector>

namespace specklenet::gemm {
namespace {

constexpr std::size_t kDepthBlock = 128;

// C[M,N] += A * B with A(i,p) = a[i*row_stride + p*col_stride] and B a
// contiguous [K,N] matrix. Four output rows share each streamed row of B;
// the depth loop is blocked so that a panel of B stays cache resident.
template <typename T>
void accumulate(std::size_t m, std::size_t n, std::size_t k, const T* a, std::size_t row_stride,
                std::size_t col_stride, const T* b, T* c) {
  for (std::size_t p0 = 0; p0 < k; p0 += kDepthBlock) {
    const std::size_t p1 = std::min(k, p0 + kDepthBlock);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
      T* __restrict c0 = c + (i + 0) * n;
      T* __restrict c1 = c + (i + 1) * n;
      T* __restrict c2 = c + (i + 2) * n;
      T* __restrict c3 = c + (i + 3) * n;
      for (std::size_t p = p0; p < p1; ++p) {
        const T a0 = a[(i + 0) * row_stride + p * col_stride];
        const T a1 = a[(i + 1) * row_stride + p * col_stride];
        const T a2 = a[(i + 2) * row_stride + p * col_stride];
        const T a3 = a[(i + 3) * row_stride + p * col_stride];
        const T* __restrict brow = b + p * n;
        for (std::size_t j = 0; j < n; ++j) {
          const T bv = brow[j];
          c0[j] += a0 * bv;
          c1[j] += a1 * bv;
          c2[j] += a2 * bv;
          c3[j] += a3 * bv;
        }
      }
    }
    for (; i < m; ++i) {
      T* __restrict crow = c + i * n;
      for (std::size_t p = p0; p < p1; ++p) {
        const T av = a[i * row_stride + p * col_stride];
        const T* __restrict brow = b + p * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
      }
    }
  }
}

}  // namespace

template <typename T>
void multiply_nn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  accumulate(m, n, k, a, k, 1, b, c);
}

template <typename T>
void multiply_tn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  accumulate(m, n, k, a, 1, m, b, c);
}

template <typename T>
void multiply_nt(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c) {
  // B is [N,K]; transposing it once lets the inner loop stream contiguous rows.
  std::vector<T> bt(n * k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t p = 0; p < k; ++p) bt[p * n + j] = b[j * k + p];
  accumulate(m, n, k, a, k, 1, bt.data(), c);
}

template void multiply_nn<float>(std::size_t, std::size_t, std::size_t, const float*, const float*, float*);
template void multiply_nn<double>(std::size_t, std::size_t, std::size_t, const double*, const double*, double*);
template void multiply_tn<float>(std::size_t, std::size_t, std::size_t, const float*, const float*, float*);
template void multiply_tn<double>(std::size_t, std::size_t, std::size_t, const double*, const double*, double*);
template void multiply_nt<float>(std::size_t, std::size_t, std::size_t, const float*, const float*, float*);
template void multiply_nt<double>(std::size_t, std::size_t, std::size_t, const double*, const double*, double*);

}  // namespace specklenet::gemm
