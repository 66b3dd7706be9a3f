// SPDX-License-Identifier: Apache-2.0
//
// beamacq - beam acquisition simulator for dense millimeter-wave networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace beamacq::fft {

// Unnormalized DFT, X[k] = sum_n x[n] exp(-i 2 pi n k / N).
// Input is zero-padded or truncated to size n before the transform.
Eigen::VectorXcd forward(const Eigen::VectorXcd& x, int n);

// Unnormalized 2-D DFT of a matrix zero-padded to rows x cols.
// Output(kr, kc) = sum_{r,c} X(r,c) exp(-i 2 pi (r kr / rows + c kc / cols)).
Eigen::MatrixXcd forward2d(const Eigen::MatrixXcd& x, int rows, int cols);

}  // namespace beamacq::fft
