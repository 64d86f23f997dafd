#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "anyonforge/anyon_model.hpp"

using anyonforge::AnyonModel;
using anyonforge::Complex;
using nlohmann::json;

TEST_CASE("fusion products of the built-in model") {
    const AnyonModel model = AnyonModel::z2_with_defects();

    CHECK(model.fuse("e", "m") == std::vector<std::string>{"f"});
    CHECK(model.fuse("1", "x+") == std::vector<std::string>{"x+"});
    CHECK(model.fuse("x+", "x-") == std::vector<std::string>{"e", "m"});
    CHECK(model.fuse("x+", "x+") == std::vector<std::string>{"1", "f"});
    CHECK(model.fuse("f", "x-") == std::vector<std::string>{"x-"});
    CHECK(model.fuse("m", "x+") == std::vector<std::string>{"x-"});

    CHECK_THROWS_AS((void)model.fuse("q", "e"), anyonforge::UnknownLabelError);
    CHECK_THROWS_AS((void)model.index_of("psi"), anyonforge::UnknownLabelError);
}

TEST_CASE("validation of built-in tables") {
    CHECK(AnyonModel::z2_with_defects().validate().empty());
    CHECK(AnyonModel::z2_bulk().validate().empty());
}

TEST_CASE("validation reports broken tables") {
    // Self-fusing e breaks associativity and leaves e without a dual.
    AnyonModel::FusionMap fusion;
    const std::vector<std::string> labels = {"1", "e", "m", "f"};
    AnyonModel reference = AnyonModel::z2_bulk();
    for (const auto& a : labels) {
        for (const auto& b : labels) {
            fusion[{a, b}] = reference.fuse(a, b);
        }
    }
    fusion[{"e", "e"}] = {"e"};
    const AnyonModel broken(labels, fusion);

    const auto report = broken.validate();
    REQUIRE(!report.empty());
    bool has_assoc = false, has_dual = false;
    for (const auto& entry : report) {
        has_assoc = has_assoc || entry.starts_with("associativity");
        has_dual = has_dual || entry.starts_with("dual");
    }
    CHECK(has_assoc);
    CHECK(has_dual);

    CHECK_THROWS_AS((void)broken.quantum_dimension("e"), anyonforge::InvalidModelError);
}

TEST_CASE("quantum dimensions") {
    const AnyonModel model = AnyonModel::z2_with_defects();

    CHECK(model.quantum_dimension("1") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(model.quantum_dimension("e") == doctest::Approx(1.0).epsilon(1e-12));
    const double dx = model.quantum_dimension("x+");
    CHECK(std::abs(dx - std::sqrt(2.0)) < 1e-9);
    CHECK(std::abs(dx * dx - 2.0) < 1e-9);

    SUBCASE("dimension law d_a d_b = sum_c N^ab_c d_c") {
        std::vector<double> dims;
        for (int a = 0; a < model.size(); ++a) {
            dims.push_back(model.quantum_dimension(a));
        }
        for (int a = 0; a < model.size(); ++a) {
            for (int b = 0; b < model.size(); ++b) {
                double rhs = 0.0;
                for (int c = 0; c < model.size(); ++c) {
                    rhs += model.multiplicity(a, b, c) * dims[c];
                }
                CHECK(std::abs(dims[a] * dims[b] - rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("modular data checks") {
    const AnyonModel model = AnyonModel::z2_bulk();

    SUBCASE("built-in data passes and reconstructs the table exactly") {
        const auto report = model.verify_modular();
        CHECK(report.ok());
        CHECK(report.verlinde_deviation < 1e-12);
        CHECK(report.verlinde_deviation == 0.0);  // half-integer arithmetic is exact
    }

    SUBCASE("built-in data passes the optional (ST)^3 check") {
        const auto report = model.verify_modular({.check_st_cubed = true});
        CHECK(report.ok());
    }

    SUBCASE("negating one S row keeps unitarity but breaks the reconstruction") {
        anyonforge::ModularData md = *model.modular();
        md.s_times_2.row(2) *= -1;
        const AnyonModel mutated(model.labels(),
                                 [&] {
                                     AnyonModel::FusionMap fusion;
                                     for (const auto& a : model.labels()) {
                                         for (const auto& b : model.labels()) {
                                             fusion[{a, b}] = model.fuse(a, b);
                                         }
                                     }
                                     return fusion;
                                 }(),
                                 md);
        const auto report = mutated.verify_modular();
        REQUIRE(!report.ok());
        bool unitarity = false, verlinde = false, symmetric = false;
        for (const auto& entry : report.violations) {
            unitarity = unitarity || entry.starts_with("s_not_unitary");
            verlinde = verlinde || entry.starts_with("verlinde_mismatch");
            symmetric = symmetric || entry.starts_with("s_not_symmetric");
        }
        CHECK(!unitarity);
        CHECK(verlinde);
        CHECK(symmetric);
    }

    SUBCASE("all-ones T passes baseline checks, fails only the (ST)^3 check") {
        anyonforge::ModularData md = *model.modular();
        md.t = {Complex(1), Complex(1), Complex(1), Complex(1)};
        AnyonModel::FusionMap fusion;
        for (const auto& a : model.labels()) {
            for (const auto& b : model.labels()) {
                fusion[{a, b}] = model.fuse(a, b);
            }
        }
        const AnyonModel mutated(model.labels(), fusion, md);
        CHECK(mutated.verify_modular().ok());
        const auto strict = mutated.verify_modular({.check_st_cubed = true});
        REQUIRE(strict.violations.size() == 1);
        CHECK(strict.violations.front().starts_with("st_cubed_mismatch"));
    }

    SUBCASE("missing modular data is a precondition error") {
        AnyonModel::FusionMap fusion;
        for (const auto& a : model.labels()) {
            for (const auto& b : model.labels()) {
                fusion[{a, b}] = model.fuse(a, b);
            }
        }
        const AnyonModel bare(model.labels(), fusion);
        CHECK_THROWS_AS((void)bare.verify_modular(), std::invalid_argument);
    }
}

TEST_CASE("json round trip") {
    const AnyonModel model = AnyonModel::z2_with_defects();
    const AnyonModel reloaded = AnyonModel::from_json(model.to_json());

    CHECK(reloaded.labels() == model.labels());
    for (int a = 0; a < model.size(); ++a) {
        for (int b = 0; b < model.size(); ++b) {
            for (int c = 0; c < model.size(); ++c) {
                CHECK(reloaded.multiplicity(a, b, c) == model.multiplicity(a, b, c));
            }
        }
    }
    REQUIRE(reloaded.modular().has_value());
    CHECK(reloaded.modular()->s_times_2 == model.modular()->s_times_2);
    CHECK(reloaded.verify_modular().ok());

    SUBCASE("omitted s/t means no modular data") {
        json doc = model.to_json();
        doc.erase("s");
        doc.erase("t");
        CHECK(!AnyonModel::from_json(doc).modular().has_value());
    }

    SUBCASE("malformed documents are rejected") {
        json doc = model.to_json();
        doc["fusion"]["bad key"] = json::array({"1"});
        CHECK_THROWS_AS((void)AnyonModel::from_json(doc), std::invalid_argument);

        json doc2 = model.to_json();
        doc2.erase("t");
        CHECK_THROWS_AS((void)AnyonModel::from_json(doc2), std::invalid_argument);
    }

    SUBCASE("file loading") {
        const auto path = std::filesystem::temp_directory_path() / "anyonforge_model_test.json";
        {
            std::ofstream out(path);
            out << model.to_json().dump();
        }
        const AnyonModel from_file = AnyonModel::load_file(path.string());
        CHECK(from_file.labels() == model.labels());
        std::filesystem::remove(path);

        CHECK_THROWS_AS((void)AnyonModel::load_file("/nonexistent/model.json"),
                        std::runtime_error);
    }
}

TEST_CASE("duals and unit") {
    const AnyonModel model = AnyonModel::z2_with_defects();
    CHECK(model.unit_index() == model.index_of("1"));
    for (int a = 0; a < model.size(); ++a) {
        CHECK(model.dual(a) == a);  // every built-in label is self-dual
    }
}
