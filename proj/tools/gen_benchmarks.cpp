// Regenerates benchmarks/*.v, the bundled vector files and data/primitives.json.
//
//   gen_benchmarks <repo-root>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "nlc/bench.hpp"
#include "nlc/cells.hpp"

namespace fs = std::filesystem;
using namespace nlc;

namespace {

// Cases per committed vector file; 0 writes the default (exhaustive) set.
std::size_t file_cases(const std::string& name) {
  if (name == "andreg" || name == "bcdadder" || name == "mod3") return 0;
  if (name == "gcd" || name == "addertree") return 200;
  return 1000;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "cannot write " << p << "\n";
    std::exit(3);
  }
  std::cout << "wrote " << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? argv[1] : ".";
  fs::create_directories(root / "benchmarks");
  fs::create_directories(root / "data");
  for (const auto& b : benchmarks()) {
    write(root / "benchmarks" / (b.name + ".v"), b.netlist());
    write(root / "benchmarks" / (b.name + ".csv"),
          format_vectors(bench_vectors(b, file_cases(b.name), 2024)));
  }
  write(root / "data" / "primitives.json", catalog_json());
  return 0;
}
