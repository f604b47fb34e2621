// Copyright 2026 The zxcalc Authors
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

#include "zxcalc/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace zx {

Tensor Tensor::identity(unsigned n) {
  Tensor t(n, n);
  for (std::size_t i = 0; i < t.rows(); ++i) t.at(i, i) = 1.0;
  return t;
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.n_in != b.n_out) fail(ErrorKind::ArityMismatch, "matmul shape mismatch");
  Tensor r(a.n_out, b.n_in);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Complex aik = a.at(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

Tensor kron(const Tensor& a, const Tensor& b) {
  Tensor r(a.n_out + b.n_out, a.n_in + b.n_in);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Complex aij = a.at(i, j);
      if (aij == Complex(0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r.at((i << b.n_out) | k, (j << b.n_in) | l) = aij * b.at(k, l);
    }
  return r;
}

Tensor dagger_t(const Tensor& a) {
  Tensor r(a.n_in, a.n_out);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = std::conj(a.at(i, j));
  return r;
}

Tensor transpose_t(const Tensor& a) {
  Tensor r(a.n_in, a.n_out);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
  return r;
}

Tensor scale(Tensor a, Complex c) {
  for (auto& v : a.data) v *= c;
  return a;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  if (a.n_out != b.n_out || a.n_in != b.n_in)
    fail(ErrorKind::ArityMismatch, "sub shape mismatch");
  Tensor r = a;
  for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] -= b.data[i];
  return r;
}

double max_abs(const Tensor& a) {
  double m = 0.0;
  for (const auto& v : a.data) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  if (a.n_out != b.n_out || a.n_in != b.n_in)
    fail(ErrorKind::ArityMismatch, "max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

bool approx_equal(const Tensor& a, const Tensor& b, double tol) {
  return a.n_out == b.n_out && a.n_in == b.n_in && max_abs_diff(a, b) <= tol;
}

}  // namespace zx
