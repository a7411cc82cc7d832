// Runs acceptance criteria 1..9 at seed 0 and prints one line per criterion.
// With a path to the pfmirror binary as argv[1], criterion 9 also compares
// two `suite --seed 0` reports produced by separate processes.
#include <array>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>

#include "pfmirror/suite.hpp"

namespace {

std::string capture(const std::string& command) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  pfm::SuiteOptions options;
  options.seed = 0;
  const pfm::SuiteReport report = pfm::run_suite(options);
  pfm::CriterionResult determinism = pfm::determinism_check(options, report);

  if (argc > 1) {
    const std::string cmd = std::string("\"") + argv[1] + "\" suite --seed 0";
    const std::string a = capture(cmd);
    const std::string b = capture(cmd);
    const bool same = !a.empty() && a == b;
    determinism.pass = determinism.pass && same;
    determinism.summary += same ? "; two CLI runs identical (" + std::to_string(a.size()) + " bytes)"
                                : "; CLI runs differ or produced no output";
  }

  bool all = true;
  auto print = [&](const pfm::CriterionResult& c) {
    std::cout << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << c.summary
              << "]\n";
    all = all && c.pass;
  };
  for (const auto& c : report.criteria) print(c);
  print(determinism);
  std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILED") << std::endl;
  return all ? 0 : 1;
}
