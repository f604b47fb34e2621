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

#pragma once

#include <cstddef>
#include <vector>

#include "zxcalc/common.hpp"

namespace zx {

// Dense complex matrix of shape 2^n_out x 2^n_in. Row index bits are output
// wires, column bits input wires; qubit 0 is the most significant bit.
struct Tensor {
  unsigned n_out = 0;
  unsigned n_in = 0;
  std::vector<Complex> data; // row-major

  Tensor() : data(1, Complex(0.0)) {}
  Tensor(unsigned out_wires, unsigned in_wires)
      : n_out(out_wires), n_in(in_wires),
        data(std::size_t(1) << (out_wires + in_wires), Complex(0.0)) {}

  static Tensor scalar(Complex v) {
    Tensor t;
    t.data[0] = v;
    return t;
  }
  static Tensor identity(unsigned n);

  std::size_t rows() const { return std::size_t(1) << n_out; }
  std::size_t cols() const { return std::size_t(1) << n_in; }
  Complex& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }
};

Tensor matmul(const Tensor& a, const Tensor& b); // a * b
Tensor kron(const Tensor& a, const Tensor& b);   // a on the more significant bits
Tensor dagger_t(const Tensor& a);
Tensor transpose_t(const Tensor& a);
Tensor scale(Tensor a, Complex c);
Tensor sub(const Tensor& a, const Tensor& b);

double max_abs(const Tensor& a);
double max_abs_diff(const Tensor& a, const Tensor& b); // shape mismatch -> throws
bool approx_equal(const Tensor& a, const Tensor& b, double tol);

}  // namespace zx
