#pragma once

#include <array>

#include <Eigen/Core>

#include "anyon_model.hpp"

namespace anyonforge {

/// Fusion channel of one defect pair: vacuum or fermion.
enum class Channel : int { vacuum = 0, fermion = 1 };

inline Channel channel_product(Channel a, Channel b) {
    return a == b ? Channel::vacuum : Channel::fermion;
}

/// Channels (a, c, b) of the defect pairs (1,2), (3,4), (5,6).  Total charge
/// vacuum forces c = a*b, so (a, b) are the two logical qubits.
using ChannelTriple = std::array<Channel, 3>;

/// The four admissible channel triples, in qubit order 00, 01, 10, 11 with
/// vacuum -> 0 and fermion -> 1.
std::array<ChannelTriple, 4> enumerate_basis();

/// State of the six-defect fusion space, as amplitudes over the four
/// admissible channel assignments in basis order 00, 01, 10, 11.
struct FusionBasisState {
    Eigen::Vector4cd amplitudes = Eigen::Vector4cd::Zero();

    /// |00>, |01>, |10> or |11> by basis index.
    static FusionBasisState computational(int index);
    double norm() const { return amplitudes.norm(); }
};

/// Exchange of two defects without a direct fusion channel: F^{-1} R F.
/// Requires F unitary and R diagonal unit-modulus.
Eigen::Matrix2cd bmatrix(const Eigen::Matrix2cd& f, const Eigen::Matrix2cd& r);

struct BraidGeneratorMatrix {
    int index;  // 1..5
    Eigen::Matrix4cd matrix;
};

/// Matrix of the elementary braid generator i (exchanging defects i, i+1) in
/// the pair-channel basis:
///   1: R (x) I        2: B (x) I        3: phase by middle-pair channel
///   4: I (x) B        5: I (x) R
BraidGeneratorMatrix braid_generator(int i, const Eigen::Matrix2cd& f,
                                     const Eigen::Matrix2cd& r);

/// All five generator matrices for the given solved F and R.
std::array<Eigen::Matrix4cd, 5> braid_generators(const Eigen::Matrix2cd& f,
                                                 const Eigen::Matrix2cd& r);

/// Generators built from the canonical solved defect data (cached).
const std::array<Eigen::Matrix4cd, 5>& solved_generators();

}  // namespace anyonforge
