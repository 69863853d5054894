// Copyright 2026 The qndsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-side reference computations. Nothing here calls into the library kernels being
// checked; states are built from explicit kets and operators from explicit sums.

#ifndef QNDSIM_TESTS_ORACLES_H
#define QNDSIM_TESTS_ORACLES_H

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qndsim/qstate.h"

namespace qndsim::oracle {

inline double max_abs(const Eigen::MatrixXcd &m) {
    return m.cwiseAbs().maxCoeff();
}

inline Vec18 ket(int be1, int be2, int ca) {
    Vec18 v = Vec18::Zero();
    v((be1 * 3 + be2) * 2 + ca) = 1.0;
    return v;
}

inline Mat18 dm(const Vec18 &psi) {
    return psi * psi.adjoint();
}

/// 2x2 Pauli written out by hand.
inline Mat2 sx() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}
inline Mat2 sy() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
inline Mat2 sz() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}

/// Single-ion 2x2 operator lifted to the register, with `leak` on the Be |L> level.
inline Mat18 lift(const Mat2 &op, int ion, cplx leak) {
    Mat18 out = Mat18::Zero();
    for (int i = 0; i < 18; i++) {
        for (int j = 0; j < 18; j++) {
            int a[3] = {i / 6, (i / 2) % 3, i % 2};
            int b[3] = {j / 6, (j / 2) % 3, j % 2};
            bool others = true;
            for (int s = 0; s < 3; s++) {
                if (s != ion && a[s] != b[s]) {
                    others = false;
                }
            }
            if (!others) {
                continue;
            }
            if (ion < 2 && (a[ion] == 2 || b[ion] == 2)) {
                out(i, j) = (a[ion] == 2 && b[ion] == 2) ? leak : cplx(0);
            } else {
                out(i, j) = op(a[ion], b[ion]);
            }
        }
    }
    return out;
}

/// Matrix exponential from the library-independent Eigen implementation.
inline Mat18 expm(const Mat18 &m) {
    Eigen::MatrixXcd d = m;
    return d.exp();
}

/// Haar-ish random pure state on the Be qubit block with Ca in |0>.
inline Vec18 random_be_state(std::mt19937_64 &gen) {
    std::normal_distribution<double> n;
    Vec18 v = Vec18::Zero();
    for (int b1 = 0; b1 < 2; b1++) {
        for (int b2 = 0; b2 < 2; b2++) {
            v((b1 * 3 + b2) * 2) = cplx(n(gen), n(gen));
        }
    }
    return v / v.norm();
}

/// Be qubit block (4x4, order 00,01,10,11) of the reduced Be-pair state.
inline Eigen::Matrix4cd be_qubits(const Mat18 &rho) {
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            for (int c = 0; c < 2; c++) {
                out(a, b) += rho(((a / 2) * 3 + a % 2) * 2 + c, ((b / 2) * 3 + b % 2) * 2 + c);
            }
        }
    }
    return out;
}

/// P(Ca = 1) read from the diagonal.
inline double ca_one(const Mat18 &rho) {
    double p = 0;
    for (int i = 1; i < 18; i += 2) {
        p += rho(i, i).real();
    }
    return p;
}

/// Binomial n sigma band check.
inline bool within_sigma(double observed, double p, double n, double sigmas) {
    return std::abs(observed - p) <= sigmas * std::sqrt(p * (1 - p) / n) + 1e-12;
}

}  // namespace qndsim::oracle

#endif
