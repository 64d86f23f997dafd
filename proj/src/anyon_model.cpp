#include "anyonforge/anyon_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

namespace anyonforge {

using nlohmann::json;

Eigen::Matrix4d ModularData::s_matrix() const {
    return s_times_2.cast<double>() / 2.0;
}

AnyonModel::AnyonModel(std::vector<std::string> labels, const FusionMap& fusion,
                       std::optional<ModularData> modular)
    : labels_(std::move(labels)), modular_(std::move(modular)) {
    for (size_t i = 0; i < labels_.size(); ++i) {
        for (size_t j = i + 1; j < labels_.size(); ++j) {
            if (labels_[i] == labels_[j]) {
                throw std::invalid_argument("duplicate label '" + labels_[i] + "'");
            }
        }
    }
    const int n = size();
    mult_.assign(static_cast<size_t>(n) * n * n, 0);
    for (const auto& [pair, results] : fusion) {
        const int a = index_of(pair.first);
        const int b = index_of(pair.second);
        for (const auto& c : results) {
            mult_[flat(a, b, index_of(c))] += 1;
        }
    }
    if (modular_ && n < 4) {
        throw std::invalid_argument("modular data needs at least the four bulk labels");
    }
    find_unit();
}

void AnyonModel::find_unit() {
    unit_ = -1;
    const int n = size();
    for (int u = 0; u < n; ++u) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) {
            for (int c = 0; c < n && ok; ++c) {
                const int expect = (a == c) ? 1 : 0;
                if (mult_[flat(u, a, c)] != expect || mult_[flat(a, u, c)] != expect) {
                    ok = false;
                }
            }
        }
        if (ok) {
            unit_ = u;
            return;
        }
    }
}

bool AnyonModel::has_label(std::string_view name) const {
    return std::find(labels_.begin(), labels_.end(), name) != labels_.end();
}

int AnyonModel::index_of(std::string_view name) const {
    for (int i = 0; i < size(); ++i) {
        if (labels_[i] == name) {
            return i;
        }
    }
    throw UnknownLabelError("unknown label '" + std::string(name) + "'");
}

int AnyonModel::multiplicity(int a, int b, int c) const {
    return mult_.at(flat(a, b, c));
}

std::vector<int> AnyonModel::fusion_channels(int a, int b) const {
    std::vector<int> out;
    for (int c = 0; c < size(); ++c) {
        for (int k = 0; k < mult_[flat(a, b, c)]; ++k) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<std::string> AnyonModel::fuse(std::string_view a, std::string_view b) const {
    std::vector<std::string> out;
    for (int c : fusion_channels(index_of(a), index_of(b))) {
        out.push_back(labels_[c]);
    }
    return out;
}

int AnyonModel::dual(int a) const {
    if (unit_ < 0) {
        return -1;
    }
    int found = -1;
    for (int b = 0; b < size(); ++b) {
        if (mult_[flat(a, b, unit_)] >= 1) {
            if (found >= 0) {
                return -1;
            }
            found = b;
        }
    }
    return found;
}

std::vector<std::string> AnyonModel::validate() const {
    std::vector<std::string> report;
    const int n = size();

    if (unit_ < 0) {
        report.push_back("unit: no label fuses as the identity on both sides");
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                if (mult_[flat(a, b, c)] != mult_[flat(b, a, c)]) {
                    report.push_back("commutativity: N(" + labels_[a] + "," + labels_[b] + ";" +
                                     labels_[c] + ") != N(" + labels_[b] + "," + labels_[a] + ";" +
                                     labels_[c] + ")");
                }
            }
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    int lhs = 0, rhs = 0;
                    for (int x = 0; x < n; ++x) {
                        lhs += mult_[flat(a, b, x)] * mult_[flat(x, c, d)];
                        rhs += mult_[flat(b, c, x)] * mult_[flat(a, x, d)];
                    }
                    if (lhs != rhs) {
                        report.push_back("associativity: (" + labels_[a] + "," + labels_[b] + "," +
                                         labels_[c] + ")->" + labels_[d] + " sums " +
                                         std::to_string(lhs) + " vs " + std::to_string(rhs));
                    }
                }
            }
        }
    }
    for (int a = 0; a < n; ++a) {
        if (dual(a) < 0) {
            report.push_back("dual: label " + labels_[a] + " has no unique dual");
        }
    }
    return report;
}

double AnyonModel::quantum_dimension(std::string_view a) const {
    return quantum_dimension(index_of(a));
}

double AnyonModel::quantum_dimension(int a) const {
    auto violations = validate();
    if (!violations.empty()) {
        throw InvalidModelError("fusion table invalid: " + violations.front());
    }
    const int n = size();
    Eigen::MatrixXd fm(n, n);
    for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
            fm(b, c) = mult_[flat(a, b, c)];
        }
    }
    // The fusion matrix can be bipartite-like, so iterate on N^T N and take
    // the square root of its dominant eigenvalue.
    const Eigen::MatrixXd gram = fm.transpose() * fm;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    v.normalize();
    double lambda = 0.0;
    constexpr double kTol = 1e-14;
    constexpr long kMaxIters = 1000000;
    for (long it = 0; it < kMaxIters; ++it) {
        Eigen::VectorXd w = gram * v;
        const double next = v.dot(w);
        w.normalize();
        const bool converged = std::abs(next - lambda) <= kTol * std::max(1.0, std::abs(next));
        lambda = next;
        v = w;
        if (converged && it > 0) {
            break;
        }
    }
    return std::sqrt(std::max(lambda, 0.0));
}

ModularReport AnyonModel::verify_modular(const ModularCheckOptions& opts) const {
    if (!modular_) {
        throw std::invalid_argument("model carries no modular data");
    }
    ModularReport report;
    const Eigen::Matrix4i& m = modular_->s_times_2;  // 2S, exact integers

    if (m != m.transpose().eval()) {
        report.violations.push_back("s_not_symmetric: S differs from its transpose");
    }
    // S unitary with real entries: (2S)(2S)^T = 4I.
    if ((m * m.transpose()).eval() != (4 * Eigen::Matrix4i::Identity()).eval()) {
        report.violations.push_back("s_not_unitary: S S^T differs from the identity");
    }
    // S^2 = C, the charge-conjugation permutation of the bulk labels.
    Eigen::Matrix4i c = Eigen::Matrix4i::Zero();
    bool duals_ok = true;
    for (int a = 0; a < 4; ++a) {
        const int d = dual(a);
        if (d < 0 || d >= 4) {
            duals_ok = false;
            break;
        }
        c(a, d) = 1;
    }
    if (!duals_ok) {
        report.violations.push_back("s_squared_check_skipped: bulk duals not well defined");
    } else if ((m * m).eval() != (4 * c).eval()) {
        report.violations.push_back("s_squared_mismatch: S^2 differs from charge conjugation");
    }
    for (int i = 0; i < 4; ++i) {
        if (std::abs(std::abs(modular_->t[i]) - 1.0) > 1e-12) {
            report.violations.push_back("t_not_unit_modulus: entry " + std::to_string(i));
        }
    }

    // Verlinde reconstruction of the bulk fusion multiplicities.
    const Eigen::Matrix4d s = modular_->s_matrix();
    if ((s.row(0).array() == 0.0).any()) {
        report.violations.push_back("verlinde_undefined: vanishing unit row entry");
    } else {
        double max_dev = 0.0;
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                for (int cc = 0; cc < 4; ++cc) {
                    double acc = 0.0;
                    for (int x = 0; x < 4; ++x) {
                        acc += s(a, x) * s(b, x) * s(cc, x) / s(0, x);
                    }
                    const double dev = std::abs(acc - static_cast<double>(mult_[flat(a, b, cc)]));
                    max_dev = std::max(max_dev, dev);
                }
            }
        }
        report.verlinde_deviation = max_dev;
        if (max_dev >= 0.5) {
            report.violations.push_back("verlinde_mismatch: reconstructed multiplicities differ");
        } else if (max_dev > 1e-12) {
            report.violations.push_back("verlinde_drift: reconstruction deviates beyond 1e-12");
        }
    }

    if (opts.check_st_cubed) {
        Eigen::Matrix4cd sc = s.cast<Complex>();
        Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
        for (int i = 0; i < 4; ++i) {
            t(i, i) = modular_->t[i];
        }
        const Eigen::Matrix4cd st = sc * t;
        const Eigen::Matrix4cd lhs = st * st * st;
        const Eigen::Matrix4cd rhs = sc * sc;
        if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-12) {
            report.violations.push_back("st_cubed_mismatch: (ST)^3 differs from S^2");
        }
    }
    return report;
}

namespace {

AnyonModel::FusionMap z2_bulk_fusion() {
    // Group-like sector: e*e = m*m = f*f = 1, e*m = f.
    AnyonModel::FusionMap fusion;
    const std::vector<std::string> bulk = {"1", "e", "m", "f"};
    auto mul = [](const std::string& a, const std::string& b) -> std::string {
        if (a == "1") return b;
        if (b == "1") return a;
        if (a == b) return "1";
        if ((a == "e" && b == "m") || (a == "m" && b == "e")) return "f";
        if ((a == "e" && b == "f") || (a == "f" && b == "e")) return "m";
        return "e";  // m*f or f*m
    };
    for (const auto& a : bulk) {
        for (const auto& b : bulk) {
            fusion[{a, b}] = {mul(a, b)};
        }
    }
    return fusion;
}

ModularData z2_modular() {
    ModularData md;
    md.s_times_2 << 1, 1, 1, 1,  //
        1, 1, -1, -1,            //
        1, -1, 1, -1,            //
        1, -1, -1, 1;
    md.t = {Complex(1), Complex(1), Complex(1), Complex(-1)};
    return md;
}

}  // namespace

AnyonModel AnyonModel::z2_bulk() {
    return AnyonModel({"1", "e", "m", "f"}, z2_bulk_fusion(), z2_modular());
}

AnyonModel AnyonModel::z2_with_defects() {
    FusionMap fusion = z2_bulk_fusion();
    const std::vector<std::string> bulk = {"1", "e", "m", "f"};
    // Sliding a bulk label past a defect: 1 and f preserve the species,
    // e and m toggle it.
    auto slide = [](const std::string& bulk_label, const std::string& chi) -> std::string {
        const bool toggles = bulk_label == "e" || bulk_label == "m";
        if (!toggles) return chi;
        return chi == "x+" ? "x-" : "x+";
    };
    for (const auto& chi : {std::string("x+"), std::string("x-")}) {
        for (const auto& a : bulk) {
            fusion[{a, chi}] = {slide(a, chi)};
            fusion[{chi, a}] = {slide(a, chi)};
        }
    }
    fusion[{"x+", "x+"}] = {"1", "f"};
    fusion[{"x-", "x-"}] = {"1", "f"};
    fusion[{"x+", "x-"}] = {"e", "m"};
    fusion[{"x-", "x+"}] = {"e", "m"};
    return AnyonModel({"1", "e", "m", "f", "x+", "x-"}, fusion, z2_modular());
}

namespace {

Complex complex_from_json(const json& v) {
    if (v.is_number()) {
        return Complex(v.get<double>(), 0.0);
    }
    if (v.is_array() && v.size() == 2) {
        return Complex(v.at(0).get<double>(), v.at(1).get<double>());
    }
    throw std::invalid_argument("expected a number or [re, im] pair");
}

}  // namespace

AnyonModel AnyonModel::from_json(const json& doc) {
    std::vector<std::string> labels = doc.at("labels").get<std::vector<std::string>>();
    FusionMap fusion;
    for (const auto& [key, value] : doc.at("fusion").items()) {
        const auto comma = key.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("fusion key '" + key + "' is not of the form \"a,b\"");
        }
        fusion[{key.substr(0, comma), key.substr(comma + 1)}] =
            value.get<std::vector<std::string>>();
    }
    std::optional<ModularData> modular;
    if (doc.contains("s") || doc.contains("t")) {
        if (!doc.contains("s") || !doc.contains("t")) {
            throw std::invalid_argument("modular data needs both \"s\" and \"t\"");
        }
        ModularData md;
        const auto& s = doc.at("s");
        if (s.size() != 4) {
            throw std::invalid_argument("\"s\" must be a 4x4 matrix");
        }
        for (int i = 0; i < 4; ++i) {
            const auto& row = s.at(i);
            if (row.size() != 4) {
                throw std::invalid_argument("\"s\" must be a 4x4 matrix");
            }
            for (int j = 0; j < 4; ++j) {
                const double twice = 2.0 * row.at(j).get<double>();
                const double rounded = std::round(twice);
                if (std::abs(twice - rounded) > 1e-9) {
                    throw std::invalid_argument("\"s\" entries must be half-integers");
                }
                md.s_times_2(i, j) = static_cast<int>(rounded);
            }
        }
        const auto& t = doc.at("t");
        if (t.size() != 4) {
            throw std::invalid_argument("\"t\" must have 4 entries");
        }
        for (int i = 0; i < 4; ++i) {
            md.t[i] = complex_from_json(t.at(i));
        }
        modular = md;
    }
    return AnyonModel(std::move(labels), fusion, std::move(modular));
}

AnyonModel AnyonModel::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open model file '" + path + "'");
    }
    json doc = json::parse(in);
    return from_json(doc);
}

nlohmann::json AnyonModel::to_json() const {
    json doc;
    doc["labels"] = labels_;
    json fusion = json::object();
    for (int a = 0; a < size(); ++a) {
        for (int b = 0; b < size(); ++b) {
            auto channels = fusion_channels(a, b);
            if (channels.empty()) {
                continue;
            }
            json results = json::array();
            for (int c : channels) {
                results.push_back(labels_[c]);
            }
            fusion[labels_[a] + "," + labels_[b]] = results;
        }
    }
    doc["fusion"] = fusion;
    if (modular_) {
        json s = json::array();
        for (int i = 0; i < 4; ++i) {
            json row = json::array();
            for (int j = 0; j < 4; ++j) {
                row.push_back(modular_->s_times_2(i, j) / 2.0);
            }
            s.push_back(row);
        }
        doc["s"] = s;
        json t = json::array();
        for (const auto& v : modular_->t) {
            t.push_back(json::array({v.real(), v.imag()}));
        }
        doc["t"] = t;
    }
    return doc;
}

}  // namespace anyonforge
