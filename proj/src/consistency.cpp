#include "anyonforge/consistency.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace anyonforge {

using nlohmann::json;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

std::string tuple_name(const AnyonModel& m, const FKey& k) {
    std::ostringstream out;
    out << "(" << m.label_name(k.a) << "," << m.label_name(k.b) << "," << m.label_name(k.c) << ";"
        << m.label_name(k.d) << ";" << m.label_name(k.e) << "," << m.label_name(k.f) << ")";
    return out.str();
}

std::string tuple_name(const AnyonModel& m, const RKey& k) {
    return "(" + m.label_name(k.a) + "," + m.label_name(k.b) + ";" + m.label_name(k.c) + ")";
}

json complex_to_json(Complex v) {
    return json::array({v.real(), v.imag()});
}

Complex complex_from_json(const json& v) {
    return {v.at(0).get<double>(), v.at(1).get<double>()};
}

}  // namespace

FSymbolSet::FSymbolSet(AnyonModel model) : model_(std::move(model)) {}

bool FSymbolSet::admissible(const FKey& k) const {
    // Left tree: a*b -> f, f*c -> d.  Right tree: b*c -> e, a*e -> d.
    return model_.multiplicity(k.a, k.b, k.f) >= 1 && model_.multiplicity(k.f, k.c, k.d) >= 1 &&
           model_.multiplicity(k.b, k.c, k.e) >= 1 && model_.multiplicity(k.a, k.e, k.d) >= 1;
}

Complex FSymbolSet::at(const FKey& k) const {
    if (!admissible(k)) {
        return Complex(0.0);
    }
    auto it = entries_.find(k);
    if (it == entries_.end()) {
        throw MissingSymbolError("missing reassociation symbol " + tuple_name(model_, k));
    }
    return it->second;
}

void FSymbolSet::set(const FKey& k, Complex value) {
    if (!admissible(k)) {
        throw std::invalid_argument("inadmissible reassociation tuple " + tuple_name(model_, k));
    }
    entries_[k] = value;
}

json FSymbolSet::to_json() const {
    json doc = json::object();
    for (const auto& [k, v] : entries_) {
        const std::string key = model_.label_name(k.a) + "," + model_.label_name(k.b) + "," +
                                model_.label_name(k.c) + "," + model_.label_name(k.d) + "," +
                                model_.label_name(k.e) + "," + model_.label_name(k.f);
        doc[key] = complex_to_json(v);
    }
    return doc;
}

FSymbolSet FSymbolSet::from_json(AnyonModel model, const json& doc) {
    FSymbolSet out(std::move(model));
    for (const auto& [key, value] : doc.items()) {
        std::istringstream in(key);
        std::array<std::string, 6> parts;
        for (auto& part : parts) {
            if (!std::getline(in, part, ',')) {
                throw std::invalid_argument("bad symbol key '" + key + "'");
            }
        }
        const auto& m = out.model();
        out.set({m.index_of(parts[0]), m.index_of(parts[1]), m.index_of(parts[2]),
                 m.index_of(parts[3]), m.index_of(parts[4]), m.index_of(parts[5])},
                complex_from_json(value));
    }
    return out;
}

RSymbolSet::RSymbolSet(AnyonModel model) : model_(std::move(model)) {}

bool RSymbolSet::admissible(const RKey& k) const {
    return model_.multiplicity(k.a, k.b, k.c) >= 1;
}

Complex RSymbolSet::at(const RKey& k) const {
    if (!admissible(k)) {
        return Complex(0.0);
    }
    auto it = entries_.find(k);
    if (it == entries_.end()) {
        throw MissingSymbolError("missing exchange symbol " + tuple_name(model_, k));
    }
    return it->second;
}

void RSymbolSet::set(const RKey& k, Complex value) {
    if (!admissible(k)) {
        throw std::invalid_argument("inadmissible exchange tuple " + tuple_name(model_, k));
    }
    entries_[k] = value;
}

json RSymbolSet::to_json() const {
    json doc = json::object();
    for (const auto& [k, v] : entries_) {
        doc[model_.label_name(k.a) + "," + model_.label_name(k.b) + "," + model_.label_name(k.c)] =
            complex_to_json(v);
    }
    return doc;
}

RSymbolSet RSymbolSet::from_json(AnyonModel model, const json& doc) {
    RSymbolSet out(std::move(model));
    for (const auto& [key, value] : doc.items()) {
        std::istringstream in(key);
        std::array<std::string, 3> parts;
        for (auto& part : parts) {
            if (!std::getline(in, part, ',')) {
                throw std::invalid_argument("bad symbol key '" + key + "'");
            }
        }
        const auto& m = out.model();
        out.set({m.index_of(parts[0]), m.index_of(parts[1]), m.index_of(parts[2])},
                complex_from_json(value));
    }
    return out;
}

namespace {

// The defect-extended model factors through a graded product: each label maps
// to (vacuum | fermion | defect) and a Z2 grade the associator ignores.  The
// scalar data below is the Tambara-Yamagami solution on the projected labels
// with nondegenerate bicharacter chi(f, f) = -1 and positive square root.
enum class Proj { unit, psi, sigma };

Proj project(const AnyonModel& m, int label) {
    const std::string& name = m.label_name(label);
    if (name == "1" || name == "e") return Proj::unit;
    if (name == "m" || name == "f") return Proj::psi;
    return Proj::sigma;
}

int psi_grade(Proj p) {
    return p == Proj::psi ? 1 : 0;
}

Complex projected_f_value(Proj a, Proj b, Proj c, Proj d, Proj e, Proj f) {
    if (a == Proj::unit || b == Proj::unit || c == Proj::unit) {
        return Complex(1.0);
    }
    const bool sa = a == Proj::sigma, sb = b == Proj::sigma, sc = c == Proj::sigma;
    if (sa && sb && sc) {
        const int sign = psi_grade(e) * psi_grade(f);
        return Complex((sign ? -1.0 : 1.0) * kInvSqrt2);
    }
    if (!sa && sb && !sc) {
        return Complex(psi_grade(a) * psi_grade(c) ? -1.0 : 1.0);
    }
    if (sa && !sb && sc) {
        return Complex(psi_grade(b) * psi_grade(d) ? -1.0 : 1.0);
    }
    return Complex(1.0);
}

}  // namespace

FSymbolSet defect_f_symbols() {
    AnyonModel model = AnyonModel::z2_with_defects();
    FSymbolSet out(model);
    const int n = model.size();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    for (int e = 0; e < n; ++e) {
                        for (int f = 0; f < n; ++f) {
                            const FKey k{a, b, c, d, e, f};
                            if (!out.admissible(k)) {
                                continue;
                            }
                            out.set(k, projected_f_value(project(model, a), project(model, b),
                                                         project(model, c), project(model, d),
                                                         project(model, e), project(model, f)));
                        }
                    }
                }
            }
        }
    }
    return out;
}

RSymbolSet defect_r_symbols() {
    AnyonModel model = AnyonModel::z2_with_defects();
    RSymbolSet out(model);
    const int n = model.size();
    const int unit = model.unit_index();
    const int fermion = model.index_of("f");
    for (int a = 0; a < n; ++a) {
        out.set({unit, a, a}, Complex(1.0));
        out.set({a, unit, a}, Complex(1.0));
    }
    const DefectRSolveResult solved = solve_defect_r(solve_defect_f());
    const DefectRSolution& canonical = solved.canonical();
    for (const char* chi : {"x+", "x-"}) {
        const int x = model.index_of(chi);
        out.set({x, x, unit}, canonical.vacuum);
        out.set({x, x, fermion}, canonical.fermion);
        out.set({x, fermion, x}, canonical.past_fermion);
    }
    return out;
}

double pentagon_residual(const FSymbolSet& f, const std::array<int, 5>& externals) {
    const auto& model = f.model();
    const int n = model.size();
    const auto [l1, l2, l3, l4, l5] = externals;
    double worst = 0.0;
    for (int a = 0; a < n; ++a) {
        // a is the channel of l1*l2 in both sides; prune early.
        if (model.multiplicity(l1, l2, a) < 1) {
            continue;
        }
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    const Complex lhs =
                        f.at({l1, l2, c, l5, d, a}) * f.at({a, l3, l4, l5, c, b});
                    Complex rhs(0.0);
                    for (int e = 0; e < n; ++e) {
                        rhs += f.at({l2, l3, l4, d, c, e}) * f.at({l1, e, l4, l5, d, b}) *
                               f.at({l1, l2, l3, b, e, a});
                    }
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            }
        }
    }
    return worst;
}

double pentagon_residual(const FSymbolSet& f, const std::array<std::string, 5>& externals) {
    const auto& m = f.model();
    return pentagon_residual(f, {m.index_of(externals[0]), m.index_of(externals[1]),
                                 m.index_of(externals[2]), m.index_of(externals[3]),
                                 m.index_of(externals[4])});
}

double pentagon_sweep_max(const FSymbolSet& f) {
    const auto& model = f.model();
    const int n = model.size();
    double worst = 0.0;
    for (int l1 = 0; l1 < n; ++l1) {
        for (int l2 = 0; l2 < n; ++l2) {
            for (int l3 = 0; l3 < n; ++l3) {
                for (int l4 = 0; l4 < n; ++l4) {
                    for (int l5 = 0; l5 < n; ++l5) {
                        // Keep only totals reachable from l1..l4.
                        bool reachable = false;
                        for (int x = 0; x < n && !reachable; ++x) {
                            if (model.multiplicity(l1, l2, x) < 1) continue;
                            for (int y = 0; y < n && !reachable; ++y) {
                                if (model.multiplicity(x, l3, y) < 1) continue;
                                if (model.multiplicity(y, l4, l5) >= 1) reachable = true;
                            }
                        }
                        if (!reachable) {
                            continue;
                        }
                        worst = std::max(worst, pentagon_residual(f, {l1, l2, l3, l4, l5}));
                    }
                }
            }
        }
    }
    return worst;
}

double hexagon_residual(const FSymbolSet& f, const RSymbolSet& r,
                        const std::array<int, 4>& externals) {
    const auto& model = f.model();
    const int n = model.size();
    const auto [l1, l2, l3, l4] = externals;
    double worst = 0.0;
    for (int a = 0; a < n; ++a) {
        if (model.multiplicity(l1, l2, a) < 1) {
            continue;
        }
        for (int c = 0; c < n; ++c) {
            Complex lhs(0.0);
            for (int b = 0; b < n; ++b) {
                const Complex left = f.at({l2, l3, l1, l4, c, b});
                const Complex right = f.at({l1, l2, l3, l4, b, a});
                if (left == Complex(0.0) || right == Complex(0.0)) {
                    continue;
                }
                lhs += left * r.at({l1, b, l4}) * right;
            }
            const Complex mid = f.at({l2, l1, l3, l4, c, a});
            Complex rhs(0.0);
            if (mid != Complex(0.0)) {
                rhs = r.at({l1, l3, c}) * mid * r.at({l1, l2, a});
            }
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

double hexagon_residual(const FSymbolSet& f, const RSymbolSet& r,
                        const std::array<std::string, 4>& externals) {
    const auto& m = f.model();
    return hexagon_residual(f, r,
                            {m.index_of(externals[0]), m.index_of(externals[1]),
                             m.index_of(externals[2]), m.index_of(externals[3])});
}

double defect_hexagon_max(const FSymbolSet& f, const RSymbolSet& r) {
    double worst = 0.0;
    for (const char* chi : {"x+", "x-"}) {
        worst = std::max(worst, hexagon_residual(f, r, {chi, chi, chi, chi}));
    }
    return worst;
}

Eigen::Matrix2cd solve_defect_f() {
    // Reduced scalar system in the unknowns (p, q, s, t) = (vacuum-vacuum,
    // vacuum-fermion, fermion-vacuum, fermion-fermion) of the defect block,
    // the eliminated shared factor, and the sign v of the scalar symbol for
    // reassociating (fermion, defect, fermion):
    //   p^2 + q s = 1,   t = -p,   p = A q,   v s = A t.
    // Eliminating A gives q s = -v p^2, so p^2 (1 - v) = 1 picks the branch.
    std::vector<Eigen::Matrix2cd> found;
    for (const double v : {1.0, -1.0}) {
        const double denom = 1.0 - v;
        if (std::abs(denom) < 1e-12) {
            continue;  // no finite solution on this branch
        }
        const double p_sq = 1.0 / denom;
        if (p_sq <= 0.0) {
            continue;
        }
        const double p = std::sqrt(p_sq);  // gauge: real positive
        const double q_sq = 1.0 - p_sq;    // unitarity of the first row
        if (q_sq < 0.0) {
            continue;
        }
        const double q = std::sqrt(q_sq);  // gauge: real positive
        if (q < 1e-12) {
            continue;  // block would be diagonal, contradicting q s = -v p^2
        }
        const double s = -v * p_sq / q;
        Eigen::Matrix2cd m;
        m << p, q, s, -p;
        if ((m.adjoint() * m - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
            continue;
        }
        found.push_back(m);
    }
    if (found.size() != 1) {
        throw std::runtime_error("defect reassociation system did not have a unique solution");
    }
    return found.front();
}

Eigen::Matrix2cd DefectRSolution::matrix() const {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = vacuum;
    m(1, 1) = fermion;
    return m;
}

double reduced_hexagon_residual(const DefectRSolution& sol, const Eigen::Matrix2cd& f) {
    const Complex slide_vac(1.0);
    const Complex u = sol.vacuum, w = sol.fermion, t = sol.past_fermion;
    // The four instances of the hexagon on four defects, written with the
    // block entries so a different (valid) gauge still checks out.
    const Complex f11 = f(0, 0), f1f = f(0, 1), ff1 = f(1, 0), fff = f(1, 1);
    const double r1 = std::abs(f11 * slide_vac * f11 + f1f * t * ff1 - u * f11 * u);
    const double r2 = std::abs(ff1 * slide_vac * f1f + fff * t * fff - w * fff * w);
    const double r3 = std::abs(ff1 * slide_vac * f11 + fff * t * ff1 - w * ff1 * u);
    const double r4 = std::abs(f11 * slide_vac * f1f + f1f * t * fff - u * f1f * w);
    return std::max({r1, r2, r3, r4});
}

DefectRSolveResult solve_defect_r(const Eigen::Matrix2cd& f) {
    if ((f.adjoint() * f - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("reassociation block is not unitary");
    }
    if ((f - solve_defect_f()).cwiseAbs().maxCoeff() > 1e-9) {
        throw std::invalid_argument("not the solved defect reassociation block");
    }

    // With the vacuum slide fixed to 1, the system reduces to
    //   (1 + t)/sqrt(2) = u^2,   (1 + t)/sqrt(2) = -w^2,   (1 - t)/sqrt(2) = u w,
    // and |u| = 1 forces |1 + t| = sqrt(2), i.e. t = +-i.  Enumerate the
    // square-root branches and keep what satisfies all four instances.
    DefectRSolveResult result;
    const Complex i_unit(0.0, 1.0);
    for (const Complex t : {i_unit, -i_unit}) {
        const Complex u_sq = (Complex(1.0) + t) * kInvSqrt2;
        const Complex u0 = std::sqrt(u_sq);
        for (const Complex u : {u0, -u0}) {
            const Complex w_sq = -u_sq;
            const Complex w0 = std::sqrt(w_sq);
            for (const Complex w : {w0, -w0}) {
                const DefectRSolution candidate{u, w, t};
                if (reduced_hexagon_residual(candidate, f) < 1e-12) {
                    result.solutions.push_back(candidate);
                }
            }
        }
    }
    const Complex canonical_vacuum = std::polar(1.0, -std::numbers::pi / 8.0);
    for (size_t i = 0; i < result.solutions.size(); ++i) {
        if (std::abs(result.solutions[i].vacuum - canonical_vacuum) < 1e-9) {
            result.canonical_index = static_cast<int>(i);
        }
    }
    if (result.canonical_index < 0) {
        throw std::runtime_error("canonical exchange solution not found");
    }
    return result;
}

FSymbolSet gauge_transform(const FSymbolSet& f,
                           const std::function<Complex(int, int, int)>& vertex_phase) {
    FSymbolSet out(f.model());
    for (const auto& [k, v] : f.entries()) {
        const Complex factor = vertex_phase(k.a, k.b, k.f) * vertex_phase(k.f, k.c, k.d) /
                               (vertex_phase(k.b, k.c, k.e) * vertex_phase(k.a, k.e, k.d));
        out.set(k, v * factor);
    }
    return out;
}

}  // namespace anyonforge
