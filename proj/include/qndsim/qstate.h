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

#ifndef QNDSIM_QSTATE_H
#define QNDSIM_QSTATE_H

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qndsim {

using cplx = std::complex<double>;

/// Register layout: Be1 (3 levels) x Be2 (3 levels) x Ca (2 levels).
/// Basis index of |b1, b2, c> is (b1 * 3 + b2) * 2 + c.
inline constexpr int kBeLevels = 3;
inline constexpr int kCaLevels = 2;
inline constexpr int kDim = kBeLevels * kBeLevels * kCaLevels;
inline constexpr std::array<int, 3> kSubsystemDims{kBeLevels, kBeLevels, kCaLevels};

using Mat18 = Eigen::Matrix<cplx, kDim, kDim>;
using Vec18 = Eigen::Matrix<cplx, kDim, 1>;
using Mat3 = Eigen::Matrix<cplx, 3, 3>;
using Mat2 = Eigen::Matrix<cplx, 2, 2>;

enum class Subsystem : uint8_t { Be1 = 0, Be2 = 1, Ca = 2 };

/// Per-ion level. Leak only exists on the beryllium ions.
enum class Level : uint8_t { Zero = 0, One = 1, Leak = 2 };

constexpr int basis_index(int be1, int be2, int ca) {
    return (be1 * kBeLevels + be2) * kCaLevels + ca;
}

/// Digits (be1, be2, ca) of a register basis index.
constexpr std::array<int, 3> basis_digits(int index) {
    return {index / (kBeLevels * kCaLevels), (index / kCaLevels) % kBeLevels, index % kCaLevels};
}

/// A set of subsystems, stored as a bitmask over Subsystem values.
class SubsystemSet {
   public:
    constexpr SubsystemSet() = default;
    constexpr SubsystemSet(std::initializer_list<Subsystem> items) {
        for (Subsystem s : items) {
            bits_ |= uint8_t(1u << uint8_t(s));
        }
    }
    static constexpr SubsystemSet all() {
        return {Subsystem::Be1, Subsystem::Be2, Subsystem::Ca};
    }
    constexpr bool contains(Subsystem s) const {
        return (bits_ >> uint8_t(s)) & 1u;
    }
    constexpr bool empty() const {
        return bits_ == 0;
    }
    constexpr uint8_t bits() const {
        return bits_;
    }
    bool operator==(const SubsystemSet &) const = default;

   private:
    uint8_t bits_ = 0;
};

/// Unitary on the full register. Unitarity is checked once at construction.
class Unitary {
   public:
    /// Throws std::invalid_argument unless ||U^dag U - I||_max < tol.
    explicit Unitary(const Mat18 &matrix, double tol = 1e-10);
    static Unitary identity();

    const Mat18 &matrix() const {
        return matrix_;
    }
    Unitary adjoint() const;
    /// Operator product; (a * b) applies b first.
    Unitary operator*(const Unitary &rhs) const;

   private:
    struct Trusted {};
    Unitary(Trusted, const Mat18 &matrix) : matrix_(matrix) {
    }
    Mat18 matrix_;
};

/// Hermitian operator on the full register, e.g. a stabilizer or a projector.
class Observable {
   public:
    /// Throws std::invalid_argument if the matrix is not Hermitian within 1e-10.
    Observable(const Mat18 &matrix, std::string label);

    const Mat18 &matrix() const {
        return matrix_;
    }
    const std::string &label() const {
        return label_;
    }

   private:
    Mat18 matrix_;
    std::string label_;
};

/// Density operator of the Be1 x Be2 x Ca register.
class RegisterState {
   public:
    /// Validates trace, Hermiticity and positivity; throws std::invalid_argument.
    explicit RegisterState(const Mat18 &rho);

    static RegisterState from_pure(const Vec18 &psi);
    /// Skips validation. For kernels whose outputs are valid by construction.
    static RegisterState trusted(const Mat18 &rho);

    const Mat18 &rho() const {
        return rho_;
    }
    static constexpr std::array<int, 3> dims() {
        return kSubsystemDims;
    }

    /// Empty when every invariant holds at the given tolerances.
    std::vector<std::string> invariant_violations(double tol = 1e-10, double psd_tol = 1e-9) const;

   private:
    RegisterState() = default;
    Mat18 rho_;
};

RegisterState new_register(Level be1, Level be2, Level ca);
/// Integer levels: 0, 1 for every ion, 2 (leak) for beryllium only.
RegisterState new_register(int be1, int be2, int ca);

RegisterState apply_unitary(const RegisterState &state, const Unitary &u);
/// Checks unitarity of u first.
RegisterState apply_unitary(const RegisterState &state, const Mat18 &u);

/// Reduced density matrix over `keep`, subsystems in (Be1, Be2, Ca) order.
Eigen::MatrixXcd partial_trace(const RegisterState &state, SubsystemSet keep);

double expectation(const RegisterState &state, const Observable &obs);

struct Projection {
    double probability;
    /// Normalized post-measurement state; absent when probability <= 1e-12.
    std::optional<RegisterState> state;
};

/// Throws std::invalid_argument if `projector` is not idempotent within 1e-10.
Projection project(const RegisterState &state, const Observable &projector);
/// Like project, but throws std::domain_error when the outcome has probability <= 1e-12.
RegisterState collapse(const RegisterState &state, const Observable &projector);

/// Single-ion operator lifted to the register. On a Be ion, the 2x2 block acts on
/// {|0>, |1>} and `leak_entry` fills the |L><L| element (1 for unitaries, 0 for Paulis).
Mat18 embed(const Mat2 &op, Subsystem target, cplx leak_entry);
/// Beryllium qubit operator padded to 3x3 with `leak_entry` on |L><L|.
Mat3 pad_be(const Mat2 &op, cplx leak_entry);
Mat18 kron3(const Mat3 &be1, const Mat3 &be2, const Mat2 &ca);

/// Pauli matrices on a qubit.
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// S_Z = Z1 Z2 and S_X = X1 X2, zero on leak levels and identity on Ca.
const Observable &stabilizer_z();
const Observable &stabilizer_x();
const Observable &stabilizer_y();
/// |bit><bit| on the calcium ion.
const Observable &ca_projector(int bit);

}  // namespace qndsim

#endif
