#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "anyon_model.hpp"

namespace anyonforge {

/// Raised when evaluating a consistency identity needs a symbol that is
/// admissible under the fusion table but absent from the set.  The message
/// names the offending tuple.
class MissingSymbolError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Key of one reassociation coefficient (F^d_{abc})^e_f.
///
/// a, b, c are the fused labels, d the total charge, f the channel of a*b in
/// the left-associated tree and e the channel of b*c in the right-associated
/// tree.  All values are label indices of the owning model.
struct FKey {
    int a, b, c, d, e, f;
    auto operator<=>(const FKey&) const = default;
};

/// Key of one exchange coefficient R^c_{ab}: a braided past b in channel c.
struct RKey {
    int a, b, c;
    auto operator<=>(const RKey&) const = default;
};

/// Reassociation coefficients over a model.  Entries exist only for
/// admissible tuples; inadmissible tuples read as 0.  An admissible tuple
/// with no stored entry is an error, not a zero.
class FSymbolSet {
  public:
    explicit FSymbolSet(AnyonModel model);

    const AnyonModel& model() const { return model_; }
    bool admissible(const FKey& k) const;
    Complex at(const FKey& k) const;
    void set(const FKey& k, Complex value);  // throws on inadmissible keys
    const std::map<FKey, Complex>& entries() const { return entries_; }

    nlohmann::json to_json() const;
    static FSymbolSet from_json(AnyonModel model, const nlohmann::json& doc);

  private:
    AnyonModel model_;
    std::map<FKey, Complex> entries_;
};

/// Exchange coefficients over a model, with the same presence semantics as
/// FSymbolSet.  Admissible means c is a fusion channel of (a, b).
class RSymbolSet {
  public:
    explicit RSymbolSet(AnyonModel model);

    const AnyonModel& model() const { return model_; }
    bool admissible(const RKey& k) const;
    Complex at(const RKey& k) const;
    void set(const RKey& k, Complex value);
    const std::map<RKey, Complex>& entries() const { return entries_; }

    nlohmann::json to_json() const;
    static RSymbolSet from_json(AnyonModel model, const nlohmann::json& doc);

  private:
    AnyonModel model_;
    std::map<RKey, Complex> entries_;
};

/// The complete reassociation data of the defect-extended model: unit-label
/// entries are 1, the defect triple carries the solved 2x2 block, and the
/// remaining scalar entries carry the signs forced by the pentagon identity.
FSymbolSet defect_f_symbols();

/// Exchange data of the defect-extended model: the canonical solved exchange
/// phases plus the trivial vacuum entries.
RSymbolSet defect_r_symbols();

/// Max |LHS - RHS| of the pentagon identity over all internal label
/// assignments, for fixed external labels (four fused labels plus total).
double pentagon_residual(const FSymbolSet& f, const std::array<int, 5>& externals);
double pentagon_residual(const FSymbolSet& f, const std::array<std::string, 5>& externals);

/// Max pentagon residual over every admissible external 5-tuple of the model.
double pentagon_sweep_max(const FSymbolSet& f);

/// Max |LHS - RHS| of the hexagon identity over all internal assignments,
/// for fixed external labels (three braided labels plus total).
double hexagon_residual(const FSymbolSet& f, const RSymbolSet& r,
                        const std::array<int, 4>& externals);
double hexagon_residual(const FSymbolSet& f, const RSymbolSet& r,
                        const std::array<std::string, 4>& externals);

/// Max hexagon residual over the defect externals (all four labels of one
/// defect species, for both species).
double defect_hexagon_max(const FSymbolSet& f, const RSymbolSet& r);

/// Solves the reduced scalar pentagon system for the defect reassociation
/// block, by enumerating the finitely many sign branches and gauge-fixing the
/// surviving solution to real positive first row.  Basis order is (vacuum,
/// fermion) on both sides.
Eigen::Matrix2cd solve_defect_f();

/// One solution of the reduced hexagon system, with the vacuum slide fixed
/// to 1.  `vacuum`/`fermion` are the exchange phases of two defects in the
/// respective channel; `past_fermion` is the phase for sliding a defect past
/// a fermion.
struct DefectRSolution {
    Complex vacuum;
    Complex fermion;
    Complex past_fermion;

    Eigen::Matrix2cd matrix() const;  // diag(vacuum, fermion)
};

struct DefectRSolveResult {
    std::vector<DefectRSolution> solutions;
    int canonical_index = -1;

    const DefectRSolution& canonical() const { return solutions.at(canonical_index); }
};

/// Solves the reduced hexagon system for the defect exchange phases given the
/// solved reassociation block.  Returns every unit-modulus solution; the
/// canonical one has vacuum phase exp(-i pi/8).
DefectRSolveResult solve_defect_r(const Eigen::Matrix2cd& f);

/// Residual of the four reduced hexagon equations for one solution.
double reduced_hexagon_residual(const DefectRSolution& sol, const Eigen::Matrix2cd& f);

/// Applies a vertex gauge transformation u(a, b, c) (a unit-modulus phase per
/// fusion vertex) to every stored symbol.  Gauge transformations preserve the
/// pentagon identity exactly.
FSymbolSet gauge_transform(const FSymbolSet& f,
                           const std::function<Complex(int, int, int)>& vertex_phase);

}  // namespace anyonforge
