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

#ifndef QNDSIM_GATES_H
#define QNDSIM_GATES_H

#include <string>
#include <string_view>
#include <vector>

#include "qndsim/qstate.h"

namespace qndsim {

enum class StabilizerBasis : uint8_t { Z, X };
enum class BellLabel : uint8_t { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class CorrectionKind : uint8_t { CZ, CX };

std::string to_string(StabilizerBasis basis);
std::string to_string(BellLabel label);
std::string to_string(CorrectionKind kind);
StabilizerBasis parse_basis(std::string_view text);
/// Accepts "Phi+", "Phi-", "Psi+", "Psi-". Throws std::invalid_argument otherwise.
BellLabel parse_bell_label(std::string_view text);

/// Stabilizer eigenvalues (E_Z, E_X) that define each Bell state.
struct BellEigenvalues {
    int z;
    int x;
};
BellEigenvalues bell_eigenvalues(BellLabel label);

/// P(phi) = cos(phi) X + sin(phi) Y.
Mat2 pauli_axis(double phi);
/// exp(i pi P(phi) / 4): a pi/2 rotation about P(phi).
Mat2 half_pi_pulse(double phi);
/// exp(i pi P(phi) / 2) = i P(phi): the inversion pulse.
Mat2 pi_pulse(double phi);

/// pi/2 rotation about P(phi) on every target; identity on |L>.
Unitary rotation_half_pi(double phi, SubsystemSet targets);
/// Inversion about P(phi) on every target; identity on |L>.
Unitary pi_rotation(double phi, SubsystemSet targets);

/// MS = exp(i pi Pi^2 / 8), Pi = sum of P_k(phi_b) over the Be participants, plus X_Ca
/// when Ca participates. Be Paulis vanish on |L>, so a leaked ion drops out of Pi.
/// Throws std::invalid_argument on an empty participant set.
Unitary ms_gate(double phi_b, SubsystemSet participants);

/// Calcium pulse phases inside the readout block: the opening pi/2 pulse, the echo
/// between the two MS gates, and the closing pi/2 pulse.
inline constexpr double kCaOpenPhase = 1.5707963267948966;
inline constexpr double kCaEchoPhase = 0.7853981633974483;
inline constexpr double kCaClosePhase = 0.0;

/// MS phase of the Be-only gate used for input preparation; maps |00> to (|00> - i|11>)/sqrt(2).
inline constexpr double kPrepMsPhase = 1.5707963267948966;

/// Stabilizer readout unitary U_S. With Ca in |0>, a +1 eigenstate of the stabilizer
/// leaves Ca in |1> and a -1 eigenstate leaves it in |0>.
///
/// The Z block is the two-MS sequence: Be pi/2 pulses at phi_b - pi/2, MS(phi_b),
/// Be inversions about P(phi_b), MS(phi_b), Be pi/2 pulses at phi_b + pi/2, with the
/// Ca pulses interleaved. It is diagonal on the Be computational basis for every phi_b.
/// The X block conjugates the Z block with common Be pi/2 pulses about Y, whose phase
/// is offset by `carrier_phase` (the accumulated carrier frame offset).
Unitary build_stabilizer_unitary(StabilizerBasis basis, double phi_b, double carrier_phase = 0.0);

/// C_Z = -I (x) X2 (axis P(carrier_phase) on Be2) or C_X = -I (x) Z2.
Unitary correction_unitary(CorrectionKind kind, double carrier_phase = 0.0);

/// Be-only MS at kPrepMsPhase on |000>, then R_{pi/2}(phi_p) on both Be ions.
RegisterState prepare_input(double phi_p);

/// Bell state on the Be pair with Ca in |0>.
RegisterState bell_state(BellLabel label);

/// Pure state with definite stabilizer eigenvalue: |00>/|01> for Z, |++>/|+->  for X.
RegisterState parity_eigenstate(StabilizerBasis basis, int eigenvalue);

/// Declarative gate description. Angles in radians.
struct GateSpec {
    enum class Kind : uint8_t { PauliAxis, Rotation, Ms, StabilizerBlock, Correction };
    Kind kind;
    std::vector<double> params;
    SubsystemSet targets;
    /// Used by StabilizerBlock and Correction.
    StabilizerBasis basis = StabilizerBasis::Z;
    CorrectionKind correction = CorrectionKind::CZ;
};

/// PauliAxis: params {phi} -> inversion pulse; Rotation: {phi}; Ms: {phi_b};
/// StabilizerBlock: {phi_b[, carrier_phase]}; Correction: {[carrier_phase]}.
Unitary build_gate(const GateSpec &spec);

}  // namespace qndsim

#endif
