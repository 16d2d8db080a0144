// One pass/fail line per acceptance criterion. Exit status is nonzero iff any criterion fails.
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>

#include "pxca/claims.hpp"
#include "pxca/report.hpp"

namespace {

struct Criterion {
  int id;
  const char* claim;
  const char* title;
  double time_limit;  // seconds, 0 when untimed
};

const Criterion criteria[] = {
    {1, "psi-relation", "psi relation", 30},
    {2, "psi-landmarks", "psi landmarks", 60},
    {3, "upsilon-glider", "upsilon glider and collisions", 0},
    {4, "second-order", "second-order reversibility and linearity", 0},
    {5, "mult", "multiplication automata", 0},
    {6, "freegroup", "free group Lambda_2", 0},
    {7, "vn2", "von Neumann XOR oracle and witnesses", 300},
    {8, "tri-null", "triangular XOR null trace", 120},
    {9, "engine-invariants", "engine invariants", 0},
    {10, "witness-additivity", "witness additivity", 0},
};

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : criteria) {
    pxca::RunReport rep(c.claim);
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
      ok = pxca::run_claim(c.claim, rep);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_time = c.time_limit == 0 || secs < c.time_limit;
    bool pass = ok && in_time && error.empty();
    failed += !pass;

    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << " " << c.title << " (" << rep.checks() - rep.failures()
         << "/" << rep.checks() << " checks, " << secs << " s";
    if (c.time_limit > 0) line << ", limit " << c.time_limit << " s";
    line << ")";
    std::cout << line.str() << "\n";

    if (!error.empty()) std::cout << "    error: " << error << "\n";
    if (!in_time) std::cout << "    over the runtime limit\n";
    if (!ok) {
      std::ostringstream full;
      rep.print(full);
      std::istringstream lines(full.str());
      std::string l;
      bool after_fail = false;
      while (std::getline(lines, l)) {
        if (l.rfind("--- summary", 0) == 0) break;
        // failing lines and the notes that follow them
        if (l.rfind("[FAIL]", 0) == 0) after_fail = true;
        else if (l.rfind("[PASS]", 0) == 0) after_fail = false;
        if (after_fail) std::cout << "    " << l << "\n";
      }
    }
    std::cout.flush();
  }
  std::cout << (failed ? "[FAIL] " : "[PASS] ") << (10 - failed) << "/10 criteria pass\n";
  return failed ? 1 : 0;
}
