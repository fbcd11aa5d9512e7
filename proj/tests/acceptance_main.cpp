#include <iostream>
#include "periods/selftest.hpp"
int main() {
    auto rs = periods::run_acceptance(20260811);
    bool ok = periods::print_acceptance_table(std::cout, rs);
    return ok ? 0 : 1;
}
