#pragma once

#include <complex>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "anyonforge/lattice_defect.hpp"

namespace test_util {

using Complex = std::complex<double>;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Eigen::Matrix2cd pauli_matrix(char letter) {
    Eigen::Matrix2cd m;
    const Complex i(0.0, 1.0);
    switch (letter) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -i, i, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m.setIdentity();
            break;
    }
    return m;
}

/// Independent dense representation of a symplectic Pauli operator.
inline Eigen::MatrixXcd dense_pauli(const anyonforge::PauliOperator& p) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
    for (int s = 0; s < p.num_sites(); ++s) {
        out = kron(out, pauli_matrix(p.letter(s)));
    }
    const Complex i(0.0, 1.0);
    Complex phase(1.0);
    for (int k = 0; k < p.phase_exponent(); ++k) {
        phase *= i;
    }
    return phase * out;
}

inline double operator_norm(const Eigen::MatrixXcd& m) {
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0);
}

inline Eigen::Vector4cd random_state(std::mt19937& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Vector4cd v;
    for (int k = 0; k < 4; ++k) {
        v(k) = Complex(gauss(rng), gauss(rng));
    }
    v.normalize();
    return v;
}

}  // namespace test_util
