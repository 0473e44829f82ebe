#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "thinfb/io.hpp"
#include "thinfb/rng.hpp"

using namespace thinfb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("thinfb-io-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("field round trip is bit-identical") {
  TempDir tmp;
  GridSpec s = GridSpec::make(2, 0.35, 1.0, 0.25);
  ScalarField f(s);
  SplitMix64 rng(5);
  for (double& v : f.values) v = 10.0 * rng.next_double() - 5.0;
  write_field(tmp.file("f.thinph1"), f);
  ScalarField g = read_field(tmp.file("f.thinph1"));
  CHECK(g.spec == s);
  REQUIRE(g.values.size() == f.values.size());
  for (std::size_t k = 0; k < f.values.size(); ++k) CHECK(g.values[k] == f.values[k]);

  // re-writing reproduces the same bytes
  write_field(tmp.file("f2.thinph1"), g);
  std::ifstream a(tmp.file("f.thinph1"), std::ios::binary);
  std::ifstream b(tmp.file("f2.thinph1"), std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("mask round trip") {
  TempDir tmp;
  GridSpec s = GridSpec::make(1, 0.5, 1.0, 0.125);
  ThinMask m(s);
  for (std::size_t k = 0; k < m.states.size(); ++k)
    m.states[k] = k % 3 == 0 ? ThinState::POSITIVE : ThinState::ZERO;
  write_mask(tmp.file("m.thinph1"), m);
  ThinMask r = read_mask(tmp.file("m.thinph1"));
  CHECK(r == m);
}

TEST_CASE("thin function round trip") {
  TempDir tmp;
  GridSpec s = GridSpec::make(1, 0.25, 2.0, 0.5);
  ThinFunction f(s);
  for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = 0.5 * k;
  write_thin_function(tmp.file("t.thinph1"), f);
  ThinFunction r = read_thin_function(tmp.file("t.thinph1"));
  CHECK(r.spec == s);
  CHECK(r.values == f.values);
}

TEST_CASE("bad magic is rejected") {
  TempDir tmp;
  std::ofstream os(tmp.file("bad.thinph1"), std::ios::binary);
  os << "NOTMAGICxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxxx";
  os.close();
  CHECK_THROWS_AS(read_field(tmp.file("bad.thinph1")), IoError);
}

TEST_CASE("truncated payload is rejected") {
  TempDir tmp;
  GridSpec s = GridSpec::make(1, 0.5, 1.0, 0.25);
  ScalarField f(s);
  write_field(tmp.file("full.thinph1"), f);
  std::ifstream in(tmp.file("full.thinph1"), std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();
  std::ofstream os(tmp.file("cut.thinph1"), std::ios::binary);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 9));
  os.close();
  CHECK_THROWS_AS(read_field(tmp.file("cut.thinph1")), IoError);
}

TEST_CASE("payload kind mismatch is rejected") {
  TempDir tmp;
  GridSpec s = GridSpec::make(1, 0.5, 1.0, 0.25);
  ScalarField f(s);
  write_field(tmp.file("f.thinph1"), f);
  // a full field is not a valid slab payload
  CHECK_THROWS_AS(read_mask(tmp.file("f.thinph1")), IoError);
  CHECK_THROWS_AS(read_thin_function(tmp.file("f.thinph1")), IoError);
}

TEST_CASE("missing file is rejected") {
  CHECK_THROWS_AS(read_field("/nonexistent/path/f.thinph1"), IoError);
}
