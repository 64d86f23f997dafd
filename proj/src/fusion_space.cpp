#include "anyonforge/fusion_space.hpp"

#include <stdexcept>

#include <Eigen/Dense>

#include "anyonforge/consistency.hpp"

namespace anyonforge {

std::array<ChannelTriple, 4> enumerate_basis() {
    std::array<ChannelTriple, 4> out;
    int next = 0;
    for (const Channel a : {Channel::vacuum, Channel::fermion}) {
        for (const Channel b : {Channel::vacuum, Channel::fermion}) {
            out[next++] = ChannelTriple{a, channel_product(a, b), b};
        }
    }
    return out;
}

FusionBasisState FusionBasisState::computational(int index) {
    if (index < 0 || index > 3) {
        throw std::out_of_range("basis index must be 0..3");
    }
    FusionBasisState s;
    s.amplitudes(index) = Complex(1.0);
    return s;
}

Eigen::Matrix2cd bmatrix(const Eigen::Matrix2cd& f, const Eigen::Matrix2cd& r) {
    if ((f.adjoint() * f - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("reassociation matrix is not unitary");
    }
    if (std::abs(r(0, 1)) > 1e-12 || std::abs(r(1, 0)) > 1e-12 ||
        std::abs(std::abs(r(0, 0)) - 1.0) > 1e-9 || std::abs(std::abs(r(1, 1)) - 1.0) > 1e-9) {
        throw std::invalid_argument("exchange matrix must be diagonal unit-modulus");
    }
    return f.inverse() * r * f;
}

BraidGeneratorMatrix braid_generator(int i, const Eigen::Matrix2cd& f,
                                     const Eigen::Matrix2cd& r) {
    if (i < 1 || i > 5) {
        throw std::out_of_range("braid generator index must be 1..5");
    }
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd b = bmatrix(f, r);
    auto kron = [](const Eigen::Matrix2cd& lhs, const Eigen::Matrix2cd& rhs) {
        Eigen::Matrix4cd out;
        for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) {
                out.block<2, 2>(2 * p, 2 * q) = lhs(p, q) * rhs;
            }
        }
        return out;
    };
    Eigen::Matrix4cd m;
    switch (i) {
        case 1:
            m = kron(r, id);
            break;
        case 2:
            m = kron(b, id);
            break;
        case 3: {
            // Defects 3 and 4 fuse within their own pair, so their exchange is
            // diagonal in the middle-pair channel c = q1*q2.
            m = Eigen::Matrix4cd::Zero();
            const auto basis = enumerate_basis();
            for (int k = 0; k < 4; ++k) {
                m(k, k) = basis[k][1] == Channel::vacuum ? r(0, 0) : r(1, 1);
            }
            break;
        }
        case 4:
            m = kron(id, b);
            break;
        default:
            m = kron(id, r);
            break;
    }
    return BraidGeneratorMatrix{i, m};
}

std::array<Eigen::Matrix4cd, 5> braid_generators(const Eigen::Matrix2cd& f,
                                                 const Eigen::Matrix2cd& r) {
    std::array<Eigen::Matrix4cd, 5> out;
    for (int i = 1; i <= 5; ++i) {
        out[i - 1] = braid_generator(i, f, r).matrix;
    }
    return out;
}

const std::array<Eigen::Matrix4cd, 5>& solved_generators() {
    static const std::array<Eigen::Matrix4cd, 5> generators = [] {
        const Eigen::Matrix2cd f = solve_defect_f();
        const Eigen::Matrix2cd r = solve_defect_r(f).canonical().matrix();
        return braid_generators(f, r);
    }();
    return generators;
}

}  // namespace anyonforge
