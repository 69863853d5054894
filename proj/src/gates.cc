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

#include "qndsim/gates.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qndsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Applies the same single-qubit operator to each target ion. Be ions get
// `leak_entry` on |L><L|.
Mat18 on_targets(const Mat2 &op, SubsystemSet targets, cplx leak_entry) {
    Mat3 id3 = Mat3::Identity();
    Mat3 be = pad_be(op, leak_entry);
    return kron3(targets.contains(Subsystem::Be1) ? be : id3, targets.contains(Subsystem::Be2) ? be : id3,
                 targets.contains(Subsystem::Ca) ? op : Mat2::Identity());
}

// U = V exp(i pi diag(lambda)^2 / 8) V^dag for Hermitian Pi = V diag(lambda) V^dag.
Mat18 exp_i_pi_square_over_8(const Mat18 &pi_op) {
    Eigen::SelfAdjointEigenSolver<Mat18> solver(pi_op);
    const auto &vals = solver.eigenvalues();
    const auto &vecs = solver.eigenvectors();
    Vec18 phases;
    for (int k = 0; k < kDim; k++) {
        phases(k) = std::polar(1.0, kPi * vals(k) * vals(k) / 8.0);
    }
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

constexpr SubsystemSet kBePair{Subsystem::Be1, Subsystem::Be2};

}  // namespace

std::string to_string(StabilizerBasis basis) {
    return basis == StabilizerBasis::Z ? "Z" : "X";
}

std::string to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return "Phi+";
        case BellLabel::PhiMinus:
            return "Phi-";
        case BellLabel::PsiPlus:
            return "Psi+";
        case BellLabel::PsiMinus:
            return "Psi-";
    }
    return "?";
}

std::string to_string(CorrectionKind kind) {
    return kind == CorrectionKind::CZ ? "C_Z" : "C_X";
}

StabilizerBasis parse_basis(std::string_view text) {
    if (text == "Z" || text == "z") {
        return StabilizerBasis::Z;
    }
    if (text == "X" || text == "x") {
        return StabilizerBasis::X;
    }
    throw std::invalid_argument("unknown stabilizer basis '" + std::string(text) + "'");
}

BellLabel parse_bell_label(std::string_view text) {
    if (text == "Phi+") {
        return BellLabel::PhiPlus;
    }
    if (text == "Phi-") {
        return BellLabel::PhiMinus;
    }
    if (text == "Psi+") {
        return BellLabel::PsiPlus;
    }
    if (text == "Psi-") {
        return BellLabel::PsiMinus;
    }
    throw std::invalid_argument("unknown Bell label '" + std::string(text) + "'");
}

BellEigenvalues bell_eigenvalues(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus:
            return {+1, +1};
        case BellLabel::PhiMinus:
            return {+1, -1};
        case BellLabel::PsiPlus:
            return {-1, +1};
        case BellLabel::PsiMinus:
            return {-1, -1};
    }
    throw std::invalid_argument("unknown Bell label");
}

Mat2 pauli_axis(double phi) {
    return std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y();
}

Mat2 half_pi_pulse(double phi) {
    // P^2 = I, so exp(i a P) = cos(a) I + i sin(a) P.
    return (Mat2::Identity() + cplx(0, 1) * pauli_axis(phi)) / std::sqrt(2.0);
}

Mat2 pi_pulse(double phi) {
    return cplx(0, 1) * pauli_axis(phi);
}

Unitary rotation_half_pi(double phi, SubsystemSet targets) {
    return Unitary(on_targets(half_pi_pulse(phi), targets, 1.0));
}

Unitary pi_rotation(double phi, SubsystemSet targets) {
    return Unitary(on_targets(pi_pulse(phi), targets, 1.0));
}

Unitary ms_gate(double phi_b, SubsystemSet participants) {
    if (participants.empty()) {
        throw std::invalid_argument("MS gate needs at least one participant");
    }
    Mat18 pi_op = Mat18::Zero();
    Mat2 axis = pauli_axis(phi_b);
    if (participants.contains(Subsystem::Be1)) {
        pi_op += embed(axis, Subsystem::Be1, 0.0);
    }
    if (participants.contains(Subsystem::Be2)) {
        pi_op += embed(axis, Subsystem::Be2, 0.0);
    }
    if (participants.contains(Subsystem::Ca)) {
        pi_op += embed(pauli_x(), Subsystem::Ca, 0.0);
    }
    return Unitary(exp_i_pi_square_over_8(pi_op), 1e-10);
}

Unitary build_stabilizer_unitary(StabilizerBasis basis, double phi_b, double carrier_phase) {
    const SubsystemSet all = SubsystemSet::all();
    Mat3 open_be = pad_be(half_pi_pulse(phi_b - kPi / 2), 1.0);
    Mat3 echo_be = pad_be(pi_pulse(phi_b), 1.0);
    Mat3 close_be = pad_be(half_pi_pulse(phi_b + kPi / 2), 1.0);
    Mat18 open = kron3(open_be, open_be, half_pi_pulse(kCaOpenPhase));
    Mat18 echo = kron3(echo_be, echo_be, pi_pulse(kCaEchoPhase));
    Mat18 close = kron3(close_be, close_be, half_pi_pulse(kCaClosePhase));
    const Mat18 &ms = ms_gate(phi_b, all).matrix();
    Mat18 block_z = close * ms * echo * ms * open;
    if (basis == StabilizerBasis::Z) {
        return Unitary(block_z, 1e-9);
    }
    // Common Be rotations about Y (plus the carrier frame offset) map X1 X2 onto Z1 Z2.
    Mat18 to_z = on_targets(half_pi_pulse(-kPi / 2 + carrier_phase), kBePair, 1.0);
    Mat18 from_z = on_targets(half_pi_pulse(kPi / 2 + carrier_phase), kBePair, 1.0);
    return Unitary(from_z * block_z * to_z, 1e-9);
}

Unitary correction_unitary(CorrectionKind kind, double carrier_phase) {
    Mat2 op = kind == CorrectionKind::CZ ? pauli_axis(carrier_phase) : pauli_z();
    Mat18 m = -kron3(Mat3::Identity(), pad_be(op, 1.0), Mat2::Identity());
    return Unitary(m);
}

RegisterState prepare_input(double phi_p) {
    RegisterState s = new_register(Level::Zero, Level::Zero, Level::Zero);
    s = apply_unitary(s, ms_gate(kPrepMsPhase, kBePair));
    return apply_unitary(s, rotation_half_pi(phi_p, kBePair));
}

RegisterState bell_state(BellLabel label) {
    const double r = 1.0 / std::sqrt(2.0);
    Vec18 psi = Vec18::Zero();
    switch (label) {
        case BellLabel::PhiPlus:
            psi(basis_index(0, 0, 0)) = r;
            psi(basis_index(1, 1, 0)) = r;
            break;
        case BellLabel::PhiMinus:
            psi(basis_index(0, 0, 0)) = r;
            psi(basis_index(1, 1, 0)) = -r;
            break;
        case BellLabel::PsiPlus:
            psi(basis_index(0, 1, 0)) = r;
            psi(basis_index(1, 0, 0)) = r;
            break;
        case BellLabel::PsiMinus:
            psi(basis_index(0, 1, 0)) = r;
            psi(basis_index(1, 0, 0)) = -r;
            break;
    }
    return RegisterState::from_pure(psi);
}

RegisterState parity_eigenstate(StabilizerBasis basis, int eigenvalue) {
    if (eigenvalue != 1 && eigenvalue != -1) {
        throw std::invalid_argument("eigenvalue must be +1 or -1");
    }
    Vec18 psi = Vec18::Zero();
    if (basis == StabilizerBasis::Z) {
        psi(basis_index(0, eigenvalue == 1 ? 0 : 1, 0)) = 1.0;
        return RegisterState::from_pure(psi);
    }
    const double h = 0.5;
    const double sign = eigenvalue;
    psi(basis_index(0, 0, 0)) = h;
    psi(basis_index(0, 1, 0)) = sign * h;
    psi(basis_index(1, 0, 0)) = h;
    psi(basis_index(1, 1, 0)) = sign * h;
    return RegisterState::from_pure(psi);
}

Unitary build_gate(const GateSpec &spec) {
    auto param = [&](size_t k, double fallback) {
        if (k < spec.params.size()) {
            if (!std::isfinite(spec.params[k])) {
                throw std::invalid_argument("gate angle is not finite");
            }
            return spec.params[k];
        }
        return fallback;
    };
    auto required = [&](size_t k) {
        if (k >= spec.params.size()) {
            throw std::invalid_argument("gate spec is missing angle #" + std::to_string(k));
        }
        return param(k, 0.0);
    };
    switch (spec.kind) {
        case GateSpec::Kind::PauliAxis:
            return pi_rotation(required(0), spec.targets);
        case GateSpec::Kind::Rotation:
            return rotation_half_pi(required(0), spec.targets);
        case GateSpec::Kind::Ms:
            return ms_gate(required(0), spec.targets);
        case GateSpec::Kind::StabilizerBlock:
            return build_stabilizer_unitary(spec.basis, required(0), param(1, 0.0));
        case GateSpec::Kind::Correction:
            return correction_unitary(spec.correction, param(0, 0.0));
    }
    throw std::invalid_argument("unknown gate kind");
}

}  // namespace qndsim
