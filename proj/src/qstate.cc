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

#include "qndsim/qstate.h"

#include <stdexcept>

namespace qndsim {

namespace {

double max_abs(const Mat18 &m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

Unitary::Unitary(const Mat18 &matrix, double tol) : matrix_(matrix) {
    double dev = max_abs(matrix.adjoint() * matrix - Mat18::Identity());
    if (!(dev < tol)) {
        throw std::invalid_argument("matrix is not unitary (max |U^dag U - I| = " + std::to_string(dev) + ")");
    }
}

Unitary Unitary::identity() {
    return Unitary(Trusted{}, Mat18::Identity());
}

Unitary Unitary::adjoint() const {
    return Unitary(Trusted{}, matrix_.adjoint());
}

Unitary Unitary::operator*(const Unitary &rhs) const {
    return Unitary(Trusted{}, matrix_ * rhs.matrix_);
}

Observable::Observable(const Mat18 &matrix, std::string label) : matrix_(matrix), label_(std::move(label)) {
    if (max_abs(matrix - matrix.adjoint()) >= 1e-10) {
        throw std::invalid_argument("observable '" + label_ + "' is not Hermitian");
    }
}

RegisterState::RegisterState(const Mat18 &rho) : rho_(rho) {
    auto problems = invariant_violations();
    if (!problems.empty()) {
        throw std::invalid_argument("invalid density operator: " + problems.front());
    }
}

RegisterState RegisterState::from_pure(const Vec18 &psi) {
    double norm = psi.norm();
    if (norm < 1e-12) {
        throw std::invalid_argument("zero state vector");
    }
    Vec18 v = psi / norm;
    return trusted(v * v.adjoint());
}

RegisterState RegisterState::trusted(const Mat18 &rho) {
    RegisterState s;
    s.rho_ = rho;
    return s;
}

std::vector<std::string> RegisterState::invariant_violations(double tol, double psd_tol) const {
    std::vector<std::string> out;
    cplx tr = rho_.trace();
    if (std::abs(tr - 1.0) > tol) {
        out.push_back("trace " + std::to_string(tr.real()) + "+" + std::to_string(tr.imag()) + "i != 1");
    }
    if (max_abs(rho_ - rho_.adjoint()) > tol) {
        out.push_back("not Hermitian");
    }
    Mat18 herm = (rho_ + rho_.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Mat18> solver(herm, Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -psd_tol) {
        out.push_back("negative eigenvalue " + std::to_string(min_eig));
    }
    return out;
}

RegisterState new_register(Level be1, Level be2, Level ca) {
    if (ca == Level::Leak) {
        throw std::invalid_argument("calcium has no leak level");
    }
    Vec18 psi = Vec18::Zero();
    psi(basis_index(int(be1), int(be2), int(ca))) = 1.0;
    return RegisterState::from_pure(psi);
}

RegisterState new_register(int be1, int be2, int ca) {
    auto check = [](int v, int levels, const char *name) {
        if (v < 0 || v >= levels) {
            throw std::invalid_argument(std::string("invalid level ") + std::to_string(v) + " for " + name);
        }
    };
    check(be1, kBeLevels, "Be1");
    check(be2, kBeLevels, "Be2");
    check(ca, kCaLevels, "Ca");
    return new_register(Level(be1), Level(be2), Level(ca));
}

RegisterState apply_unitary(const RegisterState &state, const Unitary &u) {
    Mat18 rho = u.matrix() * state.rho() * u.matrix().adjoint();
    return RegisterState::trusted((rho + rho.adjoint()) * 0.5);
}

RegisterState apply_unitary(const RegisterState &state, const Mat18 &u) {
    return apply_unitary(state, Unitary(u));
}

Eigen::MatrixXcd partial_trace(const RegisterState &state, SubsystemSet keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace needs at least one kept subsystem");
    }
    std::array<bool, 3> kept{};
    int out_dim = 1;
    for (int s = 0; s < 3; s++) {
        kept[s] = keep.contains(Subsystem(s));
        if (kept[s]) {
            out_dim *= kSubsystemDims[s];
        }
    }
    auto reduced_index = [&](const std::array<int, 3> &d) {
        int r = 0;
        for (int s = 0; s < 3; s++) {
            if (kept[s]) {
                r = r * kSubsystemDims[s] + d[s];
            }
        }
        return r;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
    const Mat18 &rho = state.rho();
    for (int i = 0; i < kDim; i++) {
        auto di = basis_digits(i);
        for (int j = 0; j < kDim; j++) {
            auto dj = basis_digits(j);
            bool traced_match = true;
            for (int s = 0; s < 3; s++) {
                if (!kept[s] && di[s] != dj[s]) {
                    traced_match = false;
                }
            }
            if (traced_match) {
                out(reduced_index(di), reduced_index(dj)) += rho(i, j);
            }
        }
    }
    return out;
}

double expectation(const RegisterState &state, const Observable &obs) {
    cplx v = (state.rho() * obs.matrix()).trace();
    if (std::abs(v.imag()) >= 1e-9) {
        throw std::logic_error("expectation of '" + obs.label() + "' has imaginary part " + std::to_string(v.imag()));
    }
    return v.real();
}

Projection project(const RegisterState &state, const Observable &projector) {
    const Mat18 &p = projector.matrix();
    if (max_abs(p * p - p) >= 1e-10) {
        throw std::invalid_argument("'" + projector.label() + "' is not a projector");
    }
    Mat18 post = p * state.rho() * p;
    double prob = post.trace().real();
    Projection result{prob, std::nullopt};
    if (prob > 1e-12) {
        post /= prob;
        result.state = RegisterState::trusted((post + post.adjoint()) * 0.5);
    }
    return result;
}

RegisterState collapse(const RegisterState &state, const Observable &projector) {
    auto r = project(state, projector);
    if (!r.state) {
        throw std::domain_error("cannot normalize onto '" + projector.label() + "': probability " +
                                std::to_string(r.probability));
    }
    return *r.state;
}

Mat3 pad_be(const Mat2 &op, cplx leak_entry) {
    Mat3 m = Mat3::Zero();
    m.topLeftCorner<2, 2>() = op;
    m(2, 2) = leak_entry;
    return m;
}

Mat18 kron3(const Mat3 &be1, const Mat3 &be2, const Mat2 &ca) {
    Mat18 out;
    for (int i = 0; i < kDim; i++) {
        auto di = basis_digits(i);
        for (int j = 0; j < kDim; j++) {
            auto dj = basis_digits(j);
            out(i, j) = be1(di[0], dj[0]) * be2(di[1], dj[1]) * ca(di[2], dj[2]);
        }
    }
    return out;
}

Mat18 embed(const Mat2 &op, Subsystem target, cplx leak_entry) {
    Mat3 id3 = Mat3::Identity();
    switch (target) {
        case Subsystem::Be1:
            return kron3(pad_be(op, leak_entry), id3, Mat2::Identity());
        case Subsystem::Be2:
            return kron3(id3, pad_be(op, leak_entry), Mat2::Identity());
        case Subsystem::Ca:
            return kron3(id3, id3, op);
    }
    throw std::invalid_argument("unknown subsystem");
}

Mat2 pauli_x() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m << 1, 0, 0, -1;
    return m;
}

const Observable &stabilizer_z() {
    static const Observable obs(kron3(pad_be(pauli_z(), 0), pad_be(pauli_z(), 0), Mat2::Identity()), "S_Z");
    return obs;
}

const Observable &stabilizer_x() {
    static const Observable obs(kron3(pad_be(pauli_x(), 0), pad_be(pauli_x(), 0), Mat2::Identity()), "S_X");
    return obs;
}

const Observable &stabilizer_y() {
    static const Observable obs(kron3(pad_be(pauli_y(), 0), pad_be(pauli_y(), 0), Mat2::Identity()), "S_Y");
    return obs;
}

const Observable &ca_projector(int bit) {
    static const Observable p0(
        kron3(Mat3::Identity(), Mat3::Identity(), (Mat2() << 1, 0, 0, 0).finished()), "Ca|0><0|");
    static const Observable p1(
        kron3(Mat3::Identity(), Mat3::Identity(), (Mat2() << 0, 0, 0, 1).finished()), "Ca|1><1|");
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("calcium bit must be 0 or 1");
    }
    return bit ? p1 : p0;
}

}  // namespace qndsim
