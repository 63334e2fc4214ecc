#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dabe/demo.hpp"
#include "support/golden.hpp"

using namespace dabe;

TEST_CASE("demo output matches the checked-in transcripts") {
  const std::filesystem::path dir = DABE_GOLDEN_DIR;
  for (const auto& file : run_demo(kGoldenSeed)) {
    CAPTURE(file.name);
    std::ifstream in(dir / file.name, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == file.contents);
  }
}

TEST_CASE("demo verdicts match the predictions") {
  const auto files = run_demo(kGoldenSeed + 1, kTestPrime);
  const auto summary = std::find_if(files.begin(), files.end(), [](const DemoFile& f) { return f.name == "summary.json"; });
  REQUIRE(summary != files.end());
  CHECK(summary->contents.find("\"matches\": false") == std::string::npos);
  CHECK(run_demo(7).front().contents != run_demo(8).front().contents);
}
