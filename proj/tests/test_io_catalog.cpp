#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "chm/catalog.hpp"
#include "chm/constructions.hpp"
#include "chm/matrix_io.hpp"
#include "test_util.hpp"

using namespace chm;
using chm::testing::max_abs_diff;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("chm_io_test_" + name);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("rational phase recovery") {
    const auto r = rational_phase_of(std::polar(1.0, kTwoPi * 3.0 / 7.0));
    REQUIRE(r.has_value());
    CHECK(r->p == 3);
    CHECK(r->q == 7);

    // negative angles wrap into [0, 1)
    const auto wrapped = rational_phase_of(std::polar(1.0, -kTwoPi / 6.0));
    REQUIRE(wrapped.has_value());
    CHECK(wrapped->p == 5);
    CHECK(wrapped->q == 6);

    const auto zero = rational_phase_of(Complex(1.0, -1e-16));
    REQUIRE(zero.has_value());
    CHECK(zero->p == 0);
    CHECK(zero->q == 1);

    // the golden-ratio angle is as far from rationals as possible: no
    // denominator below 10^6 comes within 1e-12
    CHECK(!rational_phase_of(std::polar(1.0, kTwoPi * 0.6180339887498949)).has_value());
}

TEST_CASE("cartesian round trip") {
    const ComplexMatrix h = hadamard4(std::polar(1.0, 0.7));
    const auto path = temp_path("cart.json");
    save_matrix(h, path.string(), MatrixRepresentation::Cartesian, {"h4_07", "test"});
    const ComplexMatrix back = load_matrix(path.string());
    CHECK(max_abs_diff(back, h) < 1e-15);
    std::filesystem::remove(path);
}

TEST_CASE("exact-phase round trip is bit-exact") {
    const ComplexMatrix f6 = fourier(6);
    const nlohmann::json doc = matrix_to_json(f6, MatrixRepresentation::ExactPhase);
    for (const auto& pq : doc["phases"]) {
        CHECK(6 % pq[1].get<long long>() == 0);  // denominators divide 6
    }
    const ComplexMatrix back = matrix_from_json(doc);
    CHECK(back.mat() == f6.mat());

    // a second save/load cycle reproduces the identical document and matrix
    const nlohmann::json doc2 = matrix_to_json(back, MatrixRepresentation::ExactPhase);
    CHECK(doc2["phases"] == doc["phases"]);
    CHECK(matrix_from_json(doc2).mat() == back.mat());
}

TEST_CASE("exact-phase of H(i) uses denominators dividing 4") {
    const nlohmann::json doc =
        matrix_to_json(hadamard4(Complex(0, 1)), MatrixRepresentation::ExactPhase);
    long long max_q = 0;
    for (const auto& pq : doc["phases"]) max_q = std::max(max_q, pq[1].get<long long>());
    CHECK(max_q == 4);
}

TEST_CASE("exact-phase rejects entries without a small rational phase") {
    const ComplexMatrix awkward = hadamard4(std::polar(1.0, kTwoPi * 0.6180339887498949));
    CHECK_THROWS_AS(matrix_to_json(awkward, MatrixRepresentation::ExactPhase), MatrixFileError);
}

TEST_CASE("malformed files produce structured errors") {
    const auto path = temp_path("bad.json");

    std::ofstream(path) << "{ not json\n";
    CHECK_THROWS_WITH_AS(load_matrix(path.string()),
                         doctest::Contains("line"), MatrixFileError);

    std::ofstream(path) << R"({"format_version":1,"representation":"cartesian"})";
    CHECK_THROWS_WITH_AS(load_matrix(path.string()), doctest::Contains("'n'"), MatrixFileError);

    std::ofstream(path)
        << R"({"format_version":1,"n":1,"representation":"exact-phase","scale_inv_sqrt":1,"phases":[[2,4]]})";
    CHECK_THROWS_WITH_AS(load_matrix(path.string()), doctest::Contains("lowest terms"),
                         MatrixFileError);

    CHECK_THROWS_AS(load_matrix("/nonexistent/nowhere.json"), MatrixFileError);
    std::filesystem::remove(path);
}

TEST_CASE("matrix json schema is stable") {
    const nlohmann::json cart = matrix_to_json(fourier(2), MatrixRepresentation::Cartesian);
    std::vector<std::string> cart_keys;
    for (const auto& item : cart.items()) cart_keys.push_back(item.key());
    CHECK(cart_keys == std::vector<std::string>{"entries", "format_version", "metadata", "n",
                                                "representation"});

    const nlohmann::json exact = matrix_to_json(fourier(2), MatrixRepresentation::ExactPhase);
    std::vector<std::string> exact_keys;
    for (const auto& item : exact.items()) exact_keys.push_back(item.key());
    CHECK(exact_keys == std::vector<std::string>{"format_version", "metadata", "n", "phases",
                                                 "representation", "scale_inv_sqrt"});
}

TEST_CASE("certificate round trip") {
    const EquivalenceCertificate cert = crt_certificate(3, 4);
    const auto path = temp_path("cert.json");
    save_certificate(cert, path.string());
    const EquivalenceCertificate back = load_certificate(path.string());
    CHECK(back.p_left == cert.p_left);
    CHECK(back.p_right == cert.p_right);
    CHECK(back.d_left == cert.d_left);
    CHECK(back.d_right == cert.d_right);

    std::ofstream(path) << R"({"format_version":1,"n":2,"p_left":[0,0],"d_left":[0,0],)"
                        << R"("d_right":[0,0],"p_right":[0,1]})";
    CHECK_THROWS_WITH_AS(load_certificate(path.string()), doctest::Contains("p_left"),
                         MatrixFileError);
    std::filesystem::remove(path);
}

TEST_CASE("catalog entries all verify") {
    CHECK(catalog().size() == 18);
    for (const CatalogEntry& entry : catalog()) {
        for (const PropertyCheckResult& result : verify_entry(entry)) {
            INFO(entry.name, " ", result.property, " residual ", result.residual);
            CHECK(result.passed);
        }
    }
}

TEST_CASE("catalog lookup") {
    REQUIRE(find_catalog_entry("F6") != nullptr);
    CHECK(find_catalog_entry("F6")->build().dim() == 6);
    CHECK(find_catalog_entry("no_such_matrix") == nullptr);
}

TEST_CASE("catalog matrices are exact-phase storable") {
    for (const CatalogEntry& entry : catalog()) {
        const ComplexMatrix m = entry.build();
        const nlohmann::json doc = matrix_to_json(m, MatrixRepresentation::ExactPhase);
        CHECK(max_abs_diff(matrix_from_json(doc), m) < 1e-13);
    }
}
