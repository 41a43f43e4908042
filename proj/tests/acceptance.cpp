// Runs every acceptance criterion at its stated tolerance and prints one line per criterion.
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>

#include "invmet/experiments.hpp"

int main(int argc, char** argv) {
  invmet::AcceptOptions opt;
  std::string suite = "all";
  std::string out;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--seed") == 0) opt.seed = std::strtoull(argv[i + 1], nullptr, 10);
    else if (std::strcmp(argv[i], "--suite") == 0) suite = argv[i + 1];
    else if (std::strcmp(argv[i], "--out") == 0) out = argv[i + 1];
    else {
      std::cerr << "usage: acceptance [--seed N] [--suite ID] [--out FILE]\n";
      return 2;
    }
  }
  const invmet::AcceptReport report = invmet::accept(suite, opt);
  std::cout << invmet::format_report(report);
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    invmet::write_csv(f, report.records);
  }
  std::size_t passed = 0;
  for (const auto& c : report.criteria) passed += c.pass ? 1 : 0;
  std::cout << passed << "/" << report.criteria.size() << " criteria pass\n";
  return report.pass() ? 0 : 1;
}
