#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "spraywork/catalog.hpp"
#include "spraywork/sampling.hpp"
#include "spraywork/spray_io.hpp"

namespace sw = spraywork;

namespace {

bool same_model(const sw::SprayModel& a, const sw::SprayModel& b) {
  if (a.n != b.n || a.coeffs.size() != b.coeffs.size()) return false;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (!sw::equal(a.coeffs[i], b.coeffs[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("TOML-style spray text round trips") {
  const std::string text =
      "# fixture\n"
      "dimension = 3\n"
      "label = \"demo\"\n"
      "coeffs = [\n"
      "  \"x1*y1*y3\",  # first\n"
      "  \"x3*y2^2\",\n"
      "  \"y3^2\",\n"
      "]\n";
  sw::SprayModel m = sw::parse_spray_text(text, "demo");
  CHECK(m.n == 3);
  CHECK(m.label == "demo");
  sw::SprayModel m2 = sw::parse_spray_text(sw::spray_to_text(m), "demo2");
  CHECK(same_model(m, m2));
}

TEST_CASE("JSON spray input is detected and parsed") {
  const std::string text =
      "{\"dimension\": 2, \"label\": \"j\", \"coeffs\": [\"y1^2\", \"y2^2\"]}";
  sw::SprayModel m = sw::parse_spray_text(text, "j");
  CHECK(m.n == 2);
  CHECK(m.coeffs.size() == 2);
}

TEST_CASE("malformed spray input is rejected with ConfigError") {
  CHECK_THROWS_AS(sw::parse_spray_text("label = \"no-dim\"\n", "x"),
                  sw::ConfigError);
  CHECK_THROWS_AS(
      sw::parse_spray_text("dimension = 3\ncoeffs = [\"y1^2\"]\n", "x"),
      sw::ConfigError);
  CHECK_THROWS_AS(
      sw::parse_spray_text("dimension = 2\nbogus = 1\n", "x"),
      sw::ConfigError);
  // expression errors surface with positions, not as generic failures
  CHECK_THROWS_AS(
      sw::parse_spray_text(
          "dimension = 2\ncoeffs = [\"y1^2\", \"y3*y1\"]\n", "x"),
      sw::UnknownVariable);
}

TEST_CASE("catalog entries export and reload verbatim") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "spraywork-io-test";
  fs::create_directories(dir);
  for (const auto& e : sw::catalog_entries()) {
    const std::string path = (dir / (e.name + ".toml")).string();
    sw::save_spray(e.model, path);
    sw::SprayModel back = sw::load_spray(path);
    CHECK(same_model(e.model, back));
  }
  CHECK(sw::catalog_entries().size() >= 5);
  CHECK_THROWS_AS(sw::catalog_get("no-such-entry"), sw::UnknownCatalogEntry);
  fs::remove_all(dir);
}

TEST_CASE("seeded sampling is deterministic and respects bounds") {
  sw::SampleSpec spec;
  spec.count = 40;
  spec.box = 0.8;
  spec.ymin = 0.5;
  spec.ymax = 2.0;
  spec.seed = 991;
  auto a = sw::sample_points(3, spec);
  auto b = sw::sample_points(3, spec);
  REQUIRE(a.size() == 40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    double ynorm = 0.0;
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(a[i].x[k]) <= spec.box);
      ynorm += a[i].y[k] * a[i].y[k];
    }
    ynorm = std::sqrt(ynorm);
    CHECK(ynorm >= spec.ymin - 1e-12);
    CHECK(ynorm <= spec.ymax + 1e-12);
  }
  spec.seed = 992;
  auto c = sw::sample_points(3, spec);
  CHECK(a[0].x != c[0].x);

  sw::SampleSpec bad = spec;
  bad.ymin = 0.0;
  CHECK_THROWS_AS(sw::sample_points(3, bad), sw::ConfigError);
}

TEST_CASE("Pcg32 reproduces a fixed stream per seed") {
  sw::Pcg32 g1(2024), g2(2024), g3(2025);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    std::uint32_t a = g1.next();
    all_equal &= (a == g2.next());
    any_diff |= (a != g3.next());
    double u = sw::Pcg32(std::uint64_t(i)).uniform(-2.0, 3.0);
    CHECK(u >= -2.0);
    CHECK(u < 3.0);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}
