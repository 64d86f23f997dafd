#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "anyonforge/consistency.hpp"

using namespace anyonforge;

namespace {

const double kPi = std::numbers::pi;

FKey block_key(const AnyonModel& m, const char* e, const char* f) {
    const int x = m.index_of("x+");
    return FKey{x, x, x, x, m.index_of(e), m.index_of(f)};
}

}  // namespace

TEST_CASE("pentagon residual of the solved symbols") {
    const FSymbolSet f = defect_f_symbols();
    const auto& m = f.model();

    SUBCASE("defect externals with vacuum total") {
        CHECK(pentagon_residual(f, {"x+", "x+", "x+", "x+", "1"}) < 1e-12);
        CHECK(pentagon_residual(f, {"x-", "x-", "x-", "x-", "1"}) < 1e-12);
        CHECK(pentagon_residual(f, {"f", "x+", "x+", "x+", "x+"}) < 1e-12);
    }

    SUBCASE("all-unit externals are exactly zero") {
        CHECK(pentagon_residual(f, {"1", "1", "1", "1", "1"}) == 0.0);
    }

    SUBCASE("flipping the fermion-fermion block sign breaks the identity") {
        FSymbolSet flipped = f;
        flipped.set(block_key(m, "f", "f"), Complex(1.0 / std::sqrt(2.0)));
        CHECK(pentagon_residual(flipped, {"x+", "x+", "x+", "x+", "1"}) >= 0.5);
        CHECK(pentagon_sweep_max(flipped) >= 0.5);
    }

    SUBCASE("full sweep over every admissible external tuple") {
        CHECK(pentagon_sweep_max(f) < 1e-12);
    }
}

TEST_CASE("missing admissible symbols raise a named error") {
    const AnyonModel model = AnyonModel::z2_with_defects();
    FSymbolSet empty(model);
    const FKey key = block_key(model, "1", "1");
    REQUIRE(empty.admissible(key));
    CHECK_THROWS_WITH_AS((void)empty.at(key), doctest::Contains("x+"), MissingSymbolError);
    CHECK_THROWS_AS((void)pentagon_residual(empty, {"x+", "x+", "x+", "x+", "1"}),
                    MissingSymbolError);

    SUBCASE("inadmissible tuples read as zero") {
        // Two defects cannot fuse into a bare defect label.
        const FKey bad{model.index_of("x+"), model.index_of("x+"), model.index_of("f"),
                       model.index_of("1"), model.index_of("x+"), model.index_of("1")};
        CHECK(!empty.admissible(bad));
        CHECK(empty.at(bad) == Complex(0.0));
        CHECK_THROWS_AS(empty.set(bad, Complex(1.0)), std::invalid_argument);
    }
}

TEST_CASE("unit-label entries are trivial and blocks unitary") {
    const FSymbolSet f = defect_f_symbols();
    const auto& m = f.model();
    const int unit = m.unit_index();
    for (const auto& [k, v] : f.entries()) {
        if (k.a == unit || k.b == unit || k.c == unit) {
            CHECK(v == Complex(1.0));
        }
        CHECK(std::abs(v) > 1e-15);  // inadmissible entries are absent, not zero
    }

    SUBCASE("every fixed (a,b,c,d) block is unitary") {
        const int n = m.size();
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                for (int c = 0; c < n; ++c) {
                    for (int d = 0; d < n; ++d) {
                        std::vector<int> rows, cols;
                        for (int e = 0; e < n; ++e) {
                            if (m.multiplicity(b, c, e) >= 1 && m.multiplicity(a, e, d) >= 1) {
                                rows.push_back(e);
                            }
                        }
                        for (int ff = 0; ff < n; ++ff) {
                            if (m.multiplicity(a, b, ff) >= 1 && m.multiplicity(ff, c, d) >= 1) {
                                cols.push_back(ff);
                            }
                        }
                        if (rows.empty()) {
                            continue;
                        }
                        REQUIRE(rows.size() == cols.size());
                        Eigen::MatrixXcd block(rows.size(), cols.size());
                        for (size_t i = 0; i < rows.size(); ++i) {
                            for (size_t j = 0; j < cols.size(); ++j) {
                                block(i, j) = f.at({a, b, c, d, rows[i], cols[j]});
                            }
                        }
                        const Eigen::MatrixXcd gram = block.adjoint() * block;
                        CHECK((gram - Eigen::MatrixXcd::Identity(cols.size(), cols.size()))
                                  .cwiseAbs()
                                  .maxCoeff() < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("solved defect reassociation block") {
    const Eigen::Matrix2cd f = solve_defect_f();
    const double s = 1.0 / std::sqrt(2.0);

    CHECK(std::abs(f(0, 0) - Complex(s)) < 1e-12);
    CHECK(std::abs(f(0, 1) - Complex(s)) < 1e-12);
    CHECK(std::abs(f(1, 0) - Complex(s)) < 1e-12);
    CHECK(std::abs(f(1, 1) - Complex(-s)) < 1e-12);

    SUBCASE("unitary") {
        CHECK((f.adjoint() * f - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("trace-form and antisymmetry constraints") {
        CHECK(std::abs(f(0, 0) * f(0, 0) + f(0, 1) * f(1, 0) - Complex(1.0)) < 1e-12);
        CHECK(f(1, 1) == -f(0, 0));
    }

    SUBCASE("matches the block stored in the full symbol set") {
        const FSymbolSet symbols = defect_f_symbols();
        const auto& m = symbols.model();
        const char* channels[2] = {"1", "f"};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(symbols.at(block_key(m, channels[i], channels[j])) - f(i, j)) <
                      1e-15);
            }
        }
    }
}

TEST_CASE("solved defect exchange phases") {
    const Eigen::Matrix2cd f = solve_defect_f();
    const auto result = solve_defect_r(f);

    REQUIRE(result.solutions.size() == 4);
    const DefectRSolution& canonical = result.canonical();

    const Complex u_expected = std::polar(1.0, -kPi / 8.0);
    const Complex w_expected = std::polar(1.0, 3.0 * kPi / 8.0);
    CHECK(std::abs(canonical.vacuum - u_expected) < 1e-12);
    CHECK(std::abs(canonical.fermion - w_expected) < 1e-12);
    CHECK(std::abs(canonical.past_fermion - Complex(0.0, -1.0)) < 1e-12);

    SUBCASE("canonical matrix is exp(-i pi/8) diag(1, i)") {
        const Eigen::Matrix2cd r = canonical.matrix();
        Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
        expected(0, 0) = u_expected;
        expected(1, 1) = u_expected * Complex(0.0, 1.0);
        CHECK((r - expected).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("vacuum-channel equation pins the slide phase") {
        // (1 + past_fermion)/sqrt(2) = vacuum^2, so past_fermion = -i.
        const Complex lhs = (Complex(1.0) + canonical.past_fermion) / std::sqrt(2.0);
        CHECK(std::abs(lhs - canonical.vacuum * canonical.vacuum) < 1e-12);
    }

    SUBCASE("the conjugate solution is in the list") {
        bool found = false;
        for (const auto& sol : result.solutions) {
            found = found || (std::abs(sol.vacuum - std::conj(u_expected)) < 1e-12 &&
                              std::abs(sol.fermion - std::conj(w_expected)) < 1e-12 &&
                              std::abs(sol.past_fermion - Complex(0.0, 1.0)) < 1e-12);
        }
        CHECK(found);
    }

    SUBCASE("all returned solutions satisfy the reduced equations") {
        for (const auto& sol : result.solutions) {
            CHECK(reduced_hexagon_residual(sol, f) < 1e-12);
            CHECK(std::abs(std::abs(sol.vacuum) - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(sol.fermion) - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(sol.past_fermion) - 1.0) < 1e-12);
        }
    }

    SUBCASE("preconditions on the block") {
        Eigen::Matrix2cd not_unitary;
        not_unitary << 1, 1, 1, 1;
        CHECK_THROWS_AS((void)solve_defect_r(not_unitary), std::invalid_argument);
        CHECK_THROWS_AS((void)solve_defect_r(Eigen::Matrix2cd::Identity()),
                        std::invalid_argument);
    }
}

TEST_CASE("hexagon residuals") {
    const FSymbolSet f = defect_f_symbols();
    const RSymbolSet r = defect_r_symbols();
    const auto& m = f.model();

    CHECK(hexagon_residual(f, r, {"x+", "x+", "x+", "x+"}) < 1e-12);
    CHECK(hexagon_residual(f, r, {"x-", "x-", "x-", "x-"}) < 1e-12);
    CHECK(defect_hexagon_max(f, r) < 1e-12);
    CHECK(hexagon_residual(f, r, {"1", "1", "1", "1"}) == 0.0);

    SUBCASE("negating the fermion-channel phase breaks one instance") {
        RSymbolSet broken = r;
        const RKey key{m.index_of("x+"), m.index_of("x+"), m.index_of("f")};
        broken.set(key, -r.at(key));
        CHECK(hexagon_residual(f, broken, {"x+", "x+", "x+", "x+"}) >= 0.5);
    }

    SUBCASE("missing exchange entries raise a named error") {
        RSymbolSet empty(m);
        CHECK_THROWS_AS((void)hexagon_residual(f, empty, {"x+", "x+", "x+", "x+"}),
                        MissingSymbolError);
    }

    SUBCASE("vacuum exchange entries are 1") {
        const int unit = m.unit_index();
        for (int a = 0; a < m.size(); ++a) {
            CHECK(r.at({a, unit, a}) == Complex(1.0));
            CHECK(r.at({unit, a, a}) == Complex(1.0));
        }
    }
}

TEST_CASE("vertex gauge transformations preserve the pentagon") {
    const FSymbolSet f = defect_f_symbols();
    const auto& m = f.model();
    const int xp = m.index_of("x+"), xm = m.index_of("x-");
    const int unit = m.unit_index(), fermion = m.index_of("f");

    std::mt19937 rng(20260809);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex u1 = std::polar(1.0, angle(rng));
        const Complex uf = std::polar(1.0, angle(rng));
        auto vertex = [&](int a, int b, int c) -> Complex {
            const bool defect_pair = (a == xp && b == xp) || (a == xm && b == xm);
            if (!defect_pair) {
                return Complex(1.0);
            }
            if (c == unit) return u1;
            if (c == fermion) return uf;
            return Complex(1.0);
        };
        const FSymbolSet transformed = gauge_transform(f, vertex);
        CHECK(pentagon_sweep_max(transformed) < 1e-12);

        // The defect block transforms by conjugation with diag(u1, uf).
        const FKey k11{xp, xp, xp, xp, unit, fermion};
        CHECK(std::abs(transformed.at(k11) - f.at(k11) * uf / u1) < 1e-12);
    }
}

TEST_CASE("symbol sets serialize to comma-keyed json") {
    const FSymbolSet f = defect_f_symbols();
    const RSymbolSet r = defect_r_symbols();

    const auto f_doc = f.to_json();
    const auto r_doc = r.to_json();
    CHECK(f_doc.size() == f.entries().size());
    CHECK(r_doc.contains("x+,x+,1"));
    CHECK(r_doc.at("x+,x+,1").is_array());

    const FSymbolSet f2 = FSymbolSet::from_json(f.model(), f_doc);
    CHECK(f2.entries().size() == f.entries().size());
    for (const auto& [k, v] : f.entries()) {
        CHECK(std::abs(f2.at(k) - v) < 1e-15);
    }
    const RSymbolSet r2 = RSymbolSet::from_json(r.model(), r_doc);
    for (const auto& [k, v] : r.entries()) {
        CHECK(std::abs(r2.at(k) - v) < 1e-15);
    }
}
