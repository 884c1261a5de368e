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

#ifndef SPECKLENET_GEMM_HPP_
#define SPECKLENET_GEMM_HPP_

#include <cstddef>

namespace specklenet::gemm {

// Row-major matrix products that accumulate into C. Every routine visits
// the reduction dimension in ascending order for each output element, so
// results are bit-reproducible for a given build.

/// C[M,N] += A[M,K] * B[K,N]
template <typename T>
void multiply_nn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);

/// C[M,N] += A[K,M]^T * B[K,N]
template <typename T>
void multiply_tn(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);

/// C[M,N] += A[M,K] * B[N,K]^T
template <typename T>
void multiply_nt(std::size_t m, std::size_t n, std::size_t k, const T* a, const T* b, T* c);

}  // namespace specklenet::gemm

#endif  // SPECKLENET_GEMM_HPP_
