#include "anyonforge/braid_sim.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace anyonforge {

BraidWord BraidWord::parse(std::string_view text) {
    BraidWord word;
    std::istringstream in{std::string(text)};
    std::string token;
    int position = 0;
    while (in >> token) {
        ++position;
        int index = 0;
        int exponent = 1;
        const auto caret = token.find('^');
        const std::string head = token.substr(0, caret);
        if (head.size() < 2 || head[0] != 's') {
            throw BraidParseError("bad token '" + token + "' at token " + std::to_string(position),
                                  position);
        }
        try {
            size_t used = 0;
            index = std::stoi(head.substr(1), &used);
            if (used != head.size() - 1) {
                throw std::invalid_argument("trailing characters");
            }
            if (caret != std::string_view::npos) {
                const std::string tail = token.substr(caret + 1);
                exponent = std::stoi(tail, &used);
                if (used != tail.size()) {
                    throw std::invalid_argument("trailing characters");
                }
            }
        } catch (const std::exception&) {
            throw BraidParseError("bad token '" + token + "' at token " + std::to_string(position),
                                  position);
        }
        if (index < 1 || index > 5) {
            throw BraidParseError("generator index out of range 1..5 at token " +
                                      std::to_string(position),
                                  position);
        }
        if (exponent == 0) {
            throw BraidParseError("zero exponent at token " + std::to_string(position), position);
        }
        word.tokens.push_back({index, exponent});
    }
    return word;
}

std::string BraidWord::str() const {
    std::string out;
    for (const auto& token : tokens) {
        const int count = std::abs(token.exponent);
        const bool inverse = token.exponent < 0;
        for (int k = 0; k < count; ++k) {
            if (!out.empty()) {
                out += ' ';
            }
            out += 's' + std::to_string(token.index);
            if (inverse) {
                out += "^-1";
            }
        }
    }
    return out;
}

BraidWord BraidWord::inverse() const {
    BraidWord out;
    out.tokens.reserve(tokens.size());
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
        out.tokens.push_back({it->index, -it->exponent});
    }
    return out;
}

BraidWord& BraidWord::append(const BraidWord& other) {
    tokens.insert(tokens.end(), other.tokens.begin(), other.tokens.end());
    return *this;
}

int BraidWord::length() const {
    int n = 0;
    for (const auto& token : tokens) {
        n += std::abs(token.exponent);
    }
    return n;
}

BraidWord concat(std::initializer_list<BraidWord> words) {
    BraidWord out;
    for (const auto& word : words) {
        out.append(word);
    }
    return out;
}

Eigen::Matrix4cd compile(const BraidWord& word) {
    const auto& generators = solved_generators();
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    for (const auto& token : word.tokens) {
        if (token.index < 1 || token.index > 5) {
            throw std::out_of_range("braid generator index must be 1..5");
        }
        const Eigen::Matrix4cd& g = generators[token.index - 1];
        Eigen::Matrix4cd factor = g;
        if (token.exponent < 0) {
            factor = g.adjoint();
        }
        for (int k = 0; k < std::abs(token.exponent); ++k) {
            u = u * factor;
        }
    }
    return u;
}

PhaseEquivalence equiv_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                                   double tol) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
        throw std::invalid_argument("unitaries must be square and of equal dimension");
    }
    const double fidelity = std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
    return PhaseEquivalence{fidelity >= 1.0 - tol, fidelity};
}

namespace {

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& lhs, const Eigen::Matrix2cd& rhs) {
    Eigen::Matrix4cd out;
    for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
            out.block<2, 2>(2 * p, 2 * q) = lhs(p, q) * rhs;
        }
    }
    return out;
}

std::vector<GateSpec> build_gate_library() {
    Eigen::Matrix2cd x, z, h, id;
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    h << 1, 1, 1, -1;
    h *= 1.0 / std::sqrt(2.0);
    id.setIdentity();
    Eigen::Matrix4cd cz = Eigen::Matrix4cd::Identity();
    cz(3, 3) = -1;

    std::vector<GateSpec> gates;
    gates.push_back({"X1", BraidWord{{{2, 2}}}, kron2(x, id)});
    gates.push_back({"Z1", BraidWord{{{1, 2}}}, kron2(z, id)});
    gates.push_back({"X2", BraidWord{{{4, 2}}}, kron2(id, x)});
    gates.push_back({"Z2", BraidWord{{{5, 2}}}, kron2(id, z)});
    gates.push_back({"H1", BraidWord{{{1, 1}, {2, 1}, {1, 1}}}, kron2(h, id)});
    gates.push_back({"H2", BraidWord{{{5, 1}, {4, 1}, {5, 1}}}, kron2(id, h)});
    gates.push_back({"CZ", BraidWord{{{1, -1}, {3, 1}, {5, -1}}}, cz});
    return gates;
}

}  // namespace

const std::vector<GateSpec>& gate_library() {
    static const std::vector<GateSpec> gates = build_gate_library();
    return gates;
}

const GateSpec& gate(std::string_view name) {
    for (const auto& spec : gate_library()) {
        if (spec.name == name) {
            return spec;
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

FusionBasisState simulate(const BraidWord& word, const FusionBasisState& initial) {
    if (std::abs(initial.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("initial state is not normalized");
    }
    FusionBasisState out;
    out.amplitudes = compile(word) * initial.amplitudes;
    return out;
}

MeasurementResult measure(const FusionBasisState& state) {
    MeasurementResult result{};
    for (int k = 0; k < 4; ++k) {
        result.distribution[k] = std::norm(state.amplitudes(k));
    }
    return result;
}

std::array<std::int64_t, 4> sample_counts(const MeasurementResult& result, std::int64_t n,
                                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> dist(result.distribution.begin(), result.distribution.end());
    std::array<std::int64_t, 4> counts{};
    for (std::int64_t k = 0; k < n; ++k) {
        counts[dist(rng)] += 1;
    }
    return counts;
}

BraidWord oracle_word(int target) {
    if (target < 0 || target > 3) {
        throw std::out_of_range("target must be 0..3");
    }
    // CZ flips the phase of |11>; conjugating by X on the qubits whose target
    // bit is 0 moves the flip onto the target state.
    const bool flip1 = (target & 2) == 0;
    const bool flip2 = (target & 1) == 0;
    BraidWord pre;
    if (flip1) {
        pre.append(gate("X1").word);
    }
    if (flip2) {
        pre.append(gate("X2").word);
    }
    return concat({pre, gate("CZ").word, pre});
}

BraidWord grover_word(int target) {
    const BraidWord uniform = concat({gate("H1").word, gate("H2").word});
    // Right to left: prepare the uniform state, mark the target, then reflect
    // about the uniform state.
    return concat({uniform, oracle_word(0), uniform, oracle_word(target), uniform});
}

GroverRun grover_braid(int target) {
    const BraidWord word = grover_word(target);
    const FusionBasisState final_state = simulate(word, FusionBasisState::computational(0));
    return GroverRun{word, measure(final_state), target};
}

}  // namespace anyonforge
