#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

namespace anyonforge {

using Complex = std::complex<double>;

/// Lookup of a label name that is not part of the model.
class UnknownLabelError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A fusion table failed validation where a valid one was required.
class InvalidModelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Modular (S, T) data for the four-label bulk sector.
///
/// The S-matrix entries of this model are half-integers, so they are kept as
/// integer numerators over a fixed denominator of 2.  That lets the symmetry,
/// unitarity and charge-conjugation checks run in exact integer arithmetic.
struct ModularData {
    Eigen::Matrix4i s_times_2;
    std::array<Complex, 4> t;

    /// S as a real matrix (numerators / 2).
    Eigen::Matrix4d s_matrix() const;
};

struct ModularCheckOptions {
    /// Also require (ST)^3 = S^2, which holds at vanishing chiral central charge.
    bool check_st_cubed = false;
};

/// Result of the modular-data checks.
struct ModularReport {
    std::vector<std::string> violations;
    /// Largest |reconstructed - stored| over all Verlinde fusion coefficients,
    /// before rounding to integers.
    double verlinde_deviation = 0.0;

    bool ok() const { return violations.empty(); }
};

/// An anyon model: label set, fusion multiplicities, optional modular data.
///
/// Values are immutable after construction; mutated variants are made by
/// constructing a new model (or loading edited JSON).
class AnyonModel {
  public:
    using FusionMap = std::map<std::pair<std::string, std::string>, std::vector<std::string>>;

    AnyonModel(std::vector<std::string> labels, const FusionMap& fusion,
               std::optional<ModularData> modular = std::nullopt);

    /// The four-label bulk model (1, e, m, f) with its S and T matrices.
    static AnyonModel z2_bulk();
    /// The bulk model extended by the two twist-defect labels x+ and x-.
    /// Modular data still covers only the bulk sector.
    static AnyonModel z2_with_defects();

    static AnyonModel from_json(const nlohmann::json& doc);
    static AnyonModel load_file(const std::string& path);
    nlohmann::json to_json() const;

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label_name(int idx) const { return labels_.at(idx); }
    bool has_label(std::string_view name) const;
    int index_of(std::string_view name) const;  // throws UnknownLabelError

    /// Fusion multiplicity N^{ab}_c by index.
    int multiplicity(int a, int b, int c) const;
    /// Channels c with N^{ab}_c >= 1 (indices, each repeated per multiplicity).
    std::vector<int> fusion_channels(int a, int b) const;
    /// Fusion product by name, with repeats encoding multiplicity.
    std::vector<std::string> fuse(std::string_view a, std::string_view b) const;

    /// Index of the unit label (the unique label acting as fusion identity),
    /// or -1 if the table has none.
    int unit_index() const { return unit_; }
    /// Index of the unique b with 1 in fuse(a, b), or -1 if none/ambiguous.
    int dual(int a) const;

    /// Exhaustive check of the fusion-ring laws (unit, commutativity,
    /// associativity, duals).  Empty report means the table is valid.
    std::vector<std::string> validate() const;

    /// Frobenius-Perron eigenvalue of the fusion matrix (N_a)_{bc} = N^{ab}_c,
    /// computed by power iteration on N_a^T N_a.  Requires a valid table.
    double quantum_dimension(std::string_view a) const;
    double quantum_dimension(int a) const;

    const std::optional<ModularData>& modular() const { return modular_; }

    /// Checks S symmetry, unitarity, S^2 = C and T unit-modulus, then
    /// reconstructs the bulk fusion table from S via the Verlinde sums.
    ModularReport verify_modular(const ModularCheckOptions& opts = {}) const;

  private:
    std::vector<std::string> labels_;
    std::vector<int> mult_;  // dense [a][b][c]
    std::optional<ModularData> modular_;
    int unit_ = -1;

    int flat(int a, int b, int c) const { return (a * size() + b) * size() + c; }
    void find_unit();
};

}  // namespace anyonforge
