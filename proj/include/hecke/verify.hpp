#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hecke/farey.hpp"

namespace hecke {

struct CheckResult {
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

// Desk-scale invariant suite behind the `verify` subcommand. max_n bounds the
// word-enumeration depth used by the heavier checks.
std::vector<CheckResult> run_verify_suite(long q, int max_n);

// Independent enumeration cross-checks, also used by the acceptance suite.

// mu(phi_A > n) by depth-(n+1) cylinder subdivision: enumerate itineraries,
// keep the cylinders that start in A and avoid A for steps 1..n, and add up
// their mu-masses. Independent of the closed-form tail.
double tail_cylinder_bruteforce(const FareyMap& fm, int n, int cap = kDefaultWordCap);

// Classical Stern-Brocot levels on [0,1] by iterated integer mediants;
// level 0 is {0/1, 1/1}. Fractions are (num, den) pairs in lowest terms.
std::vector<std::vector<std::pair<long, long>>> mediant_levels(int n);

}  // namespace hecke
