#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "hyplns/errors.hpp"
#include "hyplns/generators.hpp"
#include "hyplns/ilp_io.hpp"
#include "hyplns/rng.hpp"

using namespace hyplns;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("hyplns_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

bool same_instance(const IlpInstance& a, const IlpInstance& b) {
  if (a.num_vars != b.num_vars || a.direction != b.direction) return false;
  if (a.objective != b.objective) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t r = 0; r < a.constraints.size(); ++r) {
    const auto& x = a.constraints[r];
    const auto& y = b.constraints[r];
    if (x.cols != y.cols || x.coefs != y.coefs || x.sense != y.sense || x.rhs != y.rhs)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("canonical round-trip is the identity on generator outputs") {
  TempDir dir;
  Rng rng(8u);
  for (int trial = 0; trial < 12; ++trial) {
    GenSpec spec;
    spec.family = static_cast<Family>(rng.below(4));
    spec.primary = 5 + static_cast<std::int64_t>(rng.below(20));
    spec.secondary = spec.family == Family::CA ? 6 + rng.below(10)
                     : spec.family == Family::SC ? 4 + rng.below(12)
                                                 : 1 + rng.below(8);
    spec.seed = rng.next_u64();
    const IlpInstance inst = generate(spec);
    const std::string path = dir.file("inst.json");
    write_canonical(inst, path);
    CHECK(same_instance(inst, read_canonical(path)));
  }
}

TEST_CASE("canonical parse errors carry line information") {
  TempDir dir;
  const std::string path = dir.file("broken.json");
  {
    std::ofstream out(path);
    out << "{\n  \"version\": \"hyplns-ilp/1\",\n  \"oops\n}\n";
  }
  try {
    read_canonical(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line >= 3);
  }
}

TEST_CASE("canonical reader rejects undeclared columns and bad versions") {
  TempDir dir;
  const std::string path = dir.file("bad_col.json");
  {
    std::ofstream out(path);
    out << R"({"version":"hyplns-ilp/1","direction":"minimize","num_vars":2,
         "objective":[1.0,2.0],
         "constraints":[{"cols":[0,5],"coefs":[1.0,1.0],"sense":">=","rhs":1.0}]})";
  }
  CHECK_THROWS_AS(read_canonical(path), ParseError);

  const std::string vpath = dir.file("bad_version.json");
  {
    std::ofstream out(vpath);
    out << R"({"version":"hyplns-ilp/999","direction":"minimize","num_vars":1,
         "objective":[1.0],"constraints":[]})";
  }
  CHECK_THROWS_AS(read_canonical(vpath), ParseError);
}

TEST_CASE("MPS round-trip preserves structure and direction") {
  TempDir dir;
  Rng rng(9u);
  for (int trial = 0; trial < 8; ++trial) {
    GenSpec spec;
    spec.family = static_cast<Family>(rng.below(4));
    spec.primary = 5 + static_cast<std::int64_t>(rng.below(15));
    spec.secondary = spec.family == Family::CA ? 6 + rng.below(8)
                     : spec.family == Family::SC ? 4 + rng.below(8)
                                                 : 1 + rng.below(8);
    spec.seed = rng.next_u64();
    const IlpInstance inst = generate(spec);
    const std::string path = dir.file("inst.mps");
    write_mps(inst, path);
    const MpsModel model = read_mps(path);
    CHECK(same_instance(inst, model.instance));
    for (const auto& f : model.fixed) CHECK(!f.has_value());
  }
}

TEST_CASE("MPS fixings are encoded as equal bounds") {
  const IlpInstance inst = gen_mvc(6, 7, 21u);
  TempDir dir;
  const std::string path = dir.file("fixed.mps");
  std::vector<std::optional<std::uint8_t>> fixed(6);
  fixed[1] = 1;
  fixed[4] = 0;
  write_mps(inst, path, fixed);
  const MpsModel model = read_mps(path);
  REQUIRE(model.fixed.size() == 6);
  CHECK(model.fixed[1] == std::optional<std::uint8_t>{1});
  CHECK(model.fixed[4] == std::optional<std::uint8_t>{0});
  CHECK(!model.fixed[0].has_value());
  CHECK(same_instance(inst, model.instance));
}

TEST_CASE("MPS reader rejects non-binary bounds and undeclared names") {
  TempDir dir;
  const std::string path = dir.file("nonbinary.mps");
  {
    std::ofstream out(path);
    out << "NAME          T\nROWS\n N  COST\n G  r0\nCOLUMNS\n"
        << "    MARKER                 'MARKER'                 'INTORG'\n"
        << "    x0        COST      1.0   r0   1.0\n"
        << "    MARKER                 'MARKER'                 'INTEND'\n"
        << "RHS\n    RHS       r0        1.0\nBOUNDS\n UP BND       x0        5.0\nENDATA\n";
  }
  CHECK_THROWS_AS(read_mps(path), UnsupportedDomainError);

  const std::string rpath = dir.file("badrow.mps");
  {
    std::ofstream out(rpath);
    out << "NAME          T\nROWS\n N  COST\n G  r0\nCOLUMNS\n"
        << "    x0        COST      1.0   r9   1.0\nRHS\nENDATA\n";
  }
  try {
    read_mps(rpath);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 6);
  }
}
