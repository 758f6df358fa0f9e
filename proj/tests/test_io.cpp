#include <doctest.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cgsp/error.hpp"
#include "cgsp/io.hpp"
#include "cgsp/noise.hpp"
#include "support.hpp"

using namespace cgsp;

namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint64_t le(const std::vector<unsigned char>& b, std::size_t off, std::size_t width) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(b[off + i]) << (8 * i);
  return v;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("CGSP round trip is bit-identical and laid out as documented") {
  const auto dir = test::scratch_dir("io-roundtrip");
  const FrequencyGrid g(2, 8);
  std::vector<WhitePair> recs;
  {
    io::Writer w(dir / "a.cgsp", g, 3);
    for (std::uint64_t s = 0; s < 3; ++s) {
      recs.push_back(white_pair(64, s));
      w.write(recs.back().u, recs.back().v);
    }
    w.close();
  }
  const auto bytes = slurp(dir / "a.cgsp");
  REQUIRE(bytes.size() == 4 + 4 + 4 + 2 * 8 + 8 + 3 * 2 * 64 * 8);
  CHECK(std::memcmp(bytes.data(), "CGSP", 4) == 0);
  CHECK(le(bytes, 4, 4) == 1);
  CHECK(le(bytes, 8, 4) == 2);
  CHECK(le(bytes, 12, 8) == 8);
  CHECK(le(bytes, 20, 8) == 8);
  CHECK(le(bytes, 28, 8) == 3);
  const std::size_t first_y = 36 + 64 * 8;
  CHECK(std::bit_cast<double>(le(bytes, 36, 8)) == recs[0].u[0]);
  CHECK(std::bit_cast<double>(le(bytes, first_y, 8)) == recs[0].v[0]);

  io::Reader r(dir / "a.cgsp");
  CHECK(r.header().grid() == g);
  CHECK(r.header().count == 3);
  for (const auto& rec : recs) {
    auto got = r.next();
    REQUIRE(got.has_value());
    CHECK(got->first == rec.u);
    CHECK(got->second == rec.v);
  }
  CHECK_FALSE(r.next().has_value());
}

TEST_CASE("CGSP error handling") {
  const auto dir = test::scratch_dir("io-errors");
  const FrequencyGrid g(1, 8);
  {
    io::Writer w(dir / "short.cgsp", g, 2);
    w.write(std::vector<double>(8, 1.0), std::vector<double>(8, 2.0));
    CHECK_THROWS_AS(w.write(std::vector<double>(4), std::vector<double>(4)), InvalidArgument);
    CHECK_THROWS_AS(w.close(), IoError);
  }
  {
    io::Reader r(dir / "short.cgsp");
    CHECK(r.next().has_value());
    CHECK_THROWS_AS(r.next(), IoError);
  }
  {
    std::ofstream(dir / "bogus.cgsp") << "NOPE and more bytes";
    CHECK_THROWS_AS(io::Reader(dir / "bogus.cgsp"), IoError);
  }
  CHECK_THROWS_AS(io::Reader(dir / "missing.cgsp"), IoError);
  CHECK_THROWS_AS(io::Writer(dir / "no" / "such" / "dir.cgsp", g, 1), IoError);
}

TEST_CASE("CSV output") {
  const auto dir = test::scratch_dir("io-csv");
  const std::vector<std::size_t> lags{0, 1, 2};
  const std::vector<double> v{1.0, 0.1, 1.0 / 3.0}, se{0.0, 0.5, std::nan("")};
  io::write_lag_csv(dir / "c.csv", lags, v, se);
  std::ifstream in(dir / "c.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "lag,value,stderr\n0,1,0\n1,0.1,0.5\n2,0.3333333333333333,nan\n");

  for (double x : {1.0 / 3.0, 1e-300, -2.5e17, 0.1 + 0.2}) CHECK(std::stod(io::format_double(x)) == x);
  CHECK_THROWS_AS(io::write_columns_csv(dir / "x.csv", {"a", "b"}, {v, std::vector<double>(2)}), InvalidArgument);
}

}
