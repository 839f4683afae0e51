// Acceptance gate: runs every release criterion at full trial counts and
// prints one PASS/FAIL line per criterion.  Exit 0 iff all pass.
#include <iostream>

#include "scaling_lab/acceptance.hpp"

int main() {
    scaling_lab::AcceptanceReport report = scaling_lab::run_acceptance(false, std::cout);
    return report.all_passed() ? 0 : 1;
}
