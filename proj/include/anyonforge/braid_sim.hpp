#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "fusion_space.hpp"

namespace anyonforge {

/// Word parse failure; carries the 1-based position of the bad token.
class BraidParseError : public std::invalid_argument {
  public:
    BraidParseError(const std::string& what, int token_position)
        : std::invalid_argument(what), token_position(token_position) {}
    int token_position;
};

struct BraidToken {
    int index;     // generator 1..5
    int exponent;  // nonzero; negative means inverse
    bool operator==(const BraidToken&) const = default;
};

/// A braid word: ordered generator tokens.  The rightmost token acts first on
/// states (circuit order).
struct BraidWord {
    std::vector<BraidToken> tokens;

    /// Parses whitespace-separated tokens `s<i>`, `s<i>^-1` or `s<i>^<k>`.
    static BraidWord parse(std::string_view text);
    /// Text form with exponents other than +-1 expanded into repeated tokens.
    std::string str() const;

    BraidWord inverse() const;
    BraidWord& append(const BraidWord& other);
    int length() const;  // token count with exponents expanded

    bool operator==(const BraidWord&) const = default;
};

BraidWord concat(std::initializer_list<BraidWord> words);

/// Product of generator matrices in word order; the rightmost factor is the
/// first applied.  Throws std::out_of_range for generator indices outside 1..5.
Eigen::Matrix4cd compile(const BraidWord& word);

struct PhaseEquivalence {
    bool equivalent;
    double fidelity;  // |tr(U^dag V)| / dim
};

/// Projective comparison of two unitaries of equal dimension.
PhaseEquivalence equiv_up_to_phase(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v,
                                   double tol = 1e-10);

struct GateSpec {
    std::string name;
    BraidWord word;
    Eigen::Matrix4cd reference;
};

/// The seven named gates with their braid words and textbook references:
/// X1, Z1, X2, Z2, H1, H2, CZ.
const std::vector<GateSpec>& gate_library();
const GateSpec& gate(std::string_view name);

/// Applies the compiled word to a normalized state.
FusionBasisState simulate(const BraidWord& word, const FusionBasisState& initial);

struct MeasurementResult {
    std::array<double, 4> distribution;  // over basis outcomes 00, 01, 10, 11
};

/// Born-rule outcome distribution of the pairwise fusion readout.
MeasurementResult measure(const FusionBasisState& state);

/// Deterministic multinomial sampling of measurement outcomes.
std::array<std::int64_t, 4> sample_counts(const MeasurementResult& result, std::int64_t n,
                                          std::uint64_t seed);

/// Braid word of the phase oracle marking one computational target (0..3).
BraidWord oracle_word(int target);
/// Braid word of one full search iteration for the given target:
/// prepare-uniform, oracle, then reflection about the uniform state.
BraidWord grover_word(int target);

struct GroverRun {
    BraidWord word;
    MeasurementResult result;
    int target;
};

/// Runs one braided search iteration on |00> and measures.
GroverRun grover_braid(int target = 0);

}  // namespace anyonforge
